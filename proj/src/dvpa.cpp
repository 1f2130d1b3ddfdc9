#include "vpl/dvpa.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

namespace vpl {

Dvpa::Dvpa(VpAlphabet al, std::vector<std::string> state_names, std::vector<std::string> stack_names)
    : alphabet(std::move(al)), states(std::move(state_names)), stack(std::move(stack_names)) {
    if (stack.empty() || stack[0] != kBottomName) stack.insert(stack.begin(), kBottomName);
    finals.assign(states.size(), 0);
    to.assign(states.size() * alphabet.size() * stack.size(), -1);
    push.assign(to.size(), -1);
}

void Dvpa::set(int q, Symbol s, int top, int target, int pushed_symbol) {
    auto i = idx(q, s, top);
    to[i] = target;
    push[i] = pushed_symbol;
}

void Dvpa::validate() const {
    if (states.empty()) throw InvalidInput("dvpa: no states");
    if (initial < 0 || static_cast<std::size_t>(initial) >= states.size())
        throw InvalidInput("dvpa: initial state out of range");
    if (finals.size() != states.size()) throw InvalidInput("dvpa: finals size mismatch");
    if (to.size() != states.size() * alphabet.size() * stack.size() || push.size() != to.size())
        throw InvalidInput("dvpa: transition table size mismatch");
    for (std::size_t q = 0; q < states.size(); ++q)
        for (Symbol s = 0; s < static_cast<Symbol>(alphabet.size()); ++s)
            for (std::size_t g = 0; g < stack.size(); ++g) {
                auto i = idx(static_cast<int>(q), s, static_cast<int>(g));
                if (to[i] < 0 || static_cast<std::size_t>(to[i]) >= states.size())
                    throw InvalidInput("dvpa: transition undefined for (" + states[q] + ", " +
                                       alphabet.name(s) + ", " + stack[g] + ")");
                bool call = alphabet.kind(s) == Kind::Call;
                if (call && (push[i] <= 0 || static_cast<std::size_t>(push[i]) >= stack.size()))
                    throw InvalidInput("dvpa: call transition must push a non-bottom symbol at (" +
                                       states[q] + ", " + alphabet.name(s) + ", " + stack[g] + ")");
                if (!call && push[i] != -1)
                    throw InvalidInput("dvpa: only call transitions push (" + states[q] + ", " +
                                       alphabet.name(s) + ")");
            }
}

RunResult dvpa_run(const Dvpa& a, const Word& w) {
    check_word(a.alphabet, w);
    RunResult r;
    r.state = a.initial;
    r.stack = {kBottom};
    for (Symbol s : w) {
        int top = r.stack.back();
        int q = r.state;
        r.state = a.next(q, s, top);
        switch (a.alphabet.kind(s)) {
            case Kind::Call: r.stack.push_back(a.pushed(q, s, top)); break;
            case Kind::Ret: r.stack.pop_back(); break;
            case Kind::Int: break;
        }
        if (r.stack.empty()) {
            r.alive = false;
            return r;
        }
    }
    return r;
}

bool dvpa_accepts(const Dvpa& a, const Word& w) {
    auto r = dvpa_run(a, w);
    return r.alive && r.stack.size() == 1 && a.is_final(r.state);
}

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<int, int>& p) const {
        return std::hash<long long>()((static_cast<long long>(p.first) << 32) ^ static_cast<unsigned>(p.second));
    }
};

// Interning table for pairs.
struct PairIndex {
    std::unordered_map<std::pair<int, int>, int, PairHash> map;
    std::vector<std::pair<int, int>> items;
    int get(std::pair<int, int> p, bool* fresh = nullptr) {
        auto it = map.find(p);
        if (it != map.end()) {
            if (fresh) *fresh = false;
            return it->second;
        }
        int id = static_cast<int>(items.size());
        map.emplace(p, id);
        items.push_back(p);
        if (fresh) *fresh = true;
        return id;
    }
};

}  // namespace

Dvpa dvpa_boolean(BoolOp op, const Dvpa& a, const Dvpa* b) {
    if (op == BoolOp::Complement) {
        Dvpa c = a;
        for (auto& f : c.finals) f = f ? 0 : 1;
        return c;
    }
    if (!b) throw InvalidInput("boolean operation needs two automata");
    if (a.alphabet != b->alphabet) throw InvalidInput("alphabet mismatch");
    const auto& al = a.alphabet;
    PairIndex qs, gs;
    qs.get({a.initial, b->initial});
    gs.get({kBottom, kBottom});
    // Discover state and stack pairs jointly until closed.
    std::size_t done_q = 0;
    std::vector<std::size_t> done_g_for_q;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t qi = 0; qi < qs.items.size(); ++qi) {
            if (qi >= done_g_for_q.size()) done_g_for_q.push_back(0);
            for (std::size_t gi = done_g_for_q[qi]; gi < gs.items.size(); ++gi) {
                auto [qa, qb] = qs.items[qi];
                auto [ga, gb] = gs.items[gi];
                for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s) {
                    bool f1 = false, f2 = false;
                    qs.get({a.next(qa, s, ga), b->next(qb, s, gb)}, &f1);
                    if (al.kind(s) == Kind::Call) gs.get({a.pushed(qa, s, ga), b->pushed(qb, s, gb)}, &f2);
                    changed = changed || f1 || f2;
                }
            }
            if (done_g_for_q[qi] != gs.items.size()) changed = true;
            done_g_for_q[qi] = gs.items.size();
        }
        if (qs.items.size() != done_q) {
            changed = true;
            done_q = qs.items.size();
        }
    }
    std::vector<std::string> qn, gn;
    for (auto [x, y] : qs.items) qn.push_back("(" + a.states[x] + "," + b->states[y] + ")");
    for (std::size_t i = 1; i < gs.items.size(); ++i)
        gn.push_back("(" + a.stack[gs.items[i].first] + "," + b->stack[gs.items[i].second] + ")");
    Dvpa p(al, qn, gn);
    p.initial = 0;
    for (std::size_t qi = 0; qi < qs.items.size(); ++qi) {
        auto [qa, qb] = qs.items[qi];
        bool fa = a.is_final(qa), fb = b->is_final(qb);
        p.finals[qi] = op == BoolOp::Intersect ? (fa && fb) : (fa || fb);
        for (std::size_t gi = 0; gi < gs.items.size(); ++gi) {
            auto [ga, gb] = gs.items[gi];
            for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s) {
                int t = qs.map.at({a.next(qa, s, ga), b->next(qb, s, gb)});
                int pu = -1;
                if (al.kind(s) == Kind::Call) pu = gs.map.at({a.pushed(qa, s, ga), b->pushed(qb, s, gb)});
                p.set(static_cast<int>(qi), s, static_cast<int>(gi), t, pu);
            }
        }
    }
    return dvpa_trim(p);
}

Dvpa dvpa_trim(const Dvpa& a) {
    const auto& al = a.alphabet;
    std::size_t nq = a.num_states(), ng = a.num_stack();
    std::vector<char> reach(nq * ng, 0);
    std::vector<std::set<int>> below(ng);
    std::vector<std::pair<int, int>> work;
    auto add = [&](int q, int g) {
        auto k = static_cast<std::size_t>(q) * ng + static_cast<std::size_t>(g);
        if (!reach[k]) {
            reach[k] = 1;
            work.push_back({q, g});
        }
    };
    add(a.initial, kBottom);
    while (!work.empty()) {
        auto [q, g] = work.back();
        work.pop_back();
        for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s) {
            int t = a.next(q, s, g);
            switch (al.kind(s)) {
                case Kind::Int: add(t, g); break;
                case Kind::Call: {
                    int b = a.pushed(q, s, g);
                    if (below[static_cast<std::size_t>(b)].insert(g).second) {
                        // New context under b: revisit returns from every (q', b).
                        for (std::size_t q2 = 0; q2 < nq; ++q2)
                            if (reach[q2 * ng + static_cast<std::size_t>(b)])
                                for (Symbol r : al.rets()) add(a.next(static_cast<int>(q2), r, b), g);
                    }
                    add(t, b);
                    break;
                }
                case Kind::Ret:
                    if (g != kBottom)
                        for (int g2 : below[static_cast<std::size_t>(g)]) add(t, g2);
                    break;
            }
        }
    }
    std::vector<int> qmap(nq, -1), gmap(ng, -1);
    std::vector<std::string> qn, gn;
    std::vector<int> orig_g = {kBottom};
    for (std::size_t q = 0; q < nq; ++q)
        for (std::size_t g = 0; g < ng; ++g)
            if (reach[q * ng + g] && qmap[q] < 0) {
                qmap[q] = static_cast<int>(qn.size());
                qn.push_back(a.states[q]);
            }
    gmap[0] = 0;
    for (std::size_t g = 1; g < ng; ++g)
        if (!below[g].empty()) {
            gmap[g] = static_cast<int>(orig_g.size());
            orig_g.push_back(static_cast<int>(g));
            gn.push_back(a.stack[g]);
        }
    if (gn.empty() && al.num_calls() > 0) {
        gn.push_back("~pad");
        orig_g.push_back(-1);
    }
    // Target of a transition in the trimmed automaton, -1 meaning the sink.
    auto target = [&](std::size_t q, Symbol s, std::size_t g) -> std::pair<int, int> {
        bool call = al.kind(s) == Kind::Call;
        int og = orig_g[g];
        if (og < 0) return {-1, 1};
        auto i = a.idx(static_cast<int>(q), s, og);
        int t = qmap[static_cast<std::size_t>(a.to[i])];
        if (!call) return {t, -1};
        int pu = gmap[static_cast<std::size_t>(a.push[i])];
        if (pu < 0) return {-1, 1};
        return {t, pu};
    };
    bool need_sink = false;
    for (std::size_t q = 0; q < nq && !need_sink; ++q) {
        if (qmap[q] < 0) continue;
        for (std::size_t g = 0; g < orig_g.size() && !need_sink; ++g)
            for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s)
                if (target(q, s, g).first < 0) {
                    need_sink = true;
                    break;
                }
    }
    int sink = -1;
    if (need_sink) {
        sink = static_cast<int>(qn.size());
        qn.push_back("~sink");
    }
    Dvpa r(al, qn, gn);
    r.initial = qmap[static_cast<std::size_t>(a.initial)];
    for (std::size_t q = 0; q < nq; ++q) {
        if (qmap[q] < 0) continue;
        r.finals[static_cast<std::size_t>(qmap[q])] = a.finals[q];
        for (std::size_t g = 0; g < orig_g.size(); ++g)
            for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s) {
                auto [t, pu] = target(q, s, g);
                if (t < 0) t = sink;
                r.set(qmap[q], s, static_cast<int>(g), t, pu);
            }
    }
    if (sink >= 0)
        for (std::size_t g = 0; g < r.num_stack(); ++g)
            for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s)
                r.set(sink, s, static_cast<int>(g), sink, al.kind(s) == Kind::Call ? 1 : -1);
    return r;
}

namespace {

// Shortest accepted word via a generalized Dijkstra over summaries
// W(p, g, q): a well-matched word leads from p to q with top g unchanged.
struct Summaries {
    const Dvpa& a;
    std::size_t nq, ng, ns;

    struct Back {
        int kind = 0;  // 0 base, 1 internal, 2 call-return
        long prev = -1;
        Symbol s1 = -1;
        long inner = -1;
        Symbol s2 = -1;
    };
    std::vector<long> dist;
    std::vector<char> fin;
    std::vector<Back> back;
    std::vector<char> entry;
    // Call sites waiting on an entry (p', b): (item id of W(p,g,q), call symbol).
    std::vector<std::vector<std::pair<long, Symbol>>> waiting;
    // Finalized items per entry.
    std::vector<std::vector<long>> finished_at;

    using QItem = std::tuple<long, long>;
    std::priority_queue<QItem, std::vector<QItem>, std::greater<>> pq;

    explicit Summaries(const Dvpa& aa)
        : a(aa), nq(aa.num_states()), ng(aa.num_stack()), ns(aa.alphabet.size()) {
        dist.assign(nq * ng * nq, -1);
        fin.assign(dist.size(), 0);
        back.resize(dist.size());
        entry.assign(nq * ng, 0);
        waiting.resize(nq * ng);
        finished_at.resize(nq * ng);
    }
    long id(int p, int g, int q) const {
        return static_cast<long>((static_cast<std::size_t>(p) * ng + static_cast<std::size_t>(g)) * nq +
                                 static_cast<std::size_t>(q));
    }
    void relax(long it, long d, Back b) {
        if (fin[static_cast<std::size_t>(it)]) return;
        if (dist[static_cast<std::size_t>(it)] < 0 || d < dist[static_cast<std::size_t>(it)]) {
            dist[static_cast<std::size_t>(it)] = d;
            back[static_cast<std::size_t>(it)] = b;
            pq.push({d, it});
        }
    }
    void open(int p, int g) {
        auto e = static_cast<std::size_t>(p) * ng + static_cast<std::size_t>(g);
        if (entry[e]) return;
        entry[e] = 1;
        relax(id(p, g, p), 0, Back{});
    }
    void combine(long outer, Symbol call, long inner) {
        auto o = static_cast<std::size_t>(outer);
        int p = static_cast<int>(o / (ng * nq));
        int g = static_cast<int>((o / nq) % ng);
        int q = static_cast<int>(o % nq);
        int b = a.pushed(q, call, g);
        int q2 = static_cast<int>(static_cast<std::size_t>(inner) % nq);
        for (Symbol r : a.alphabet.rets()) {
            int t = a.next(q2, r, b);
            relax(id(p, g, t), dist[o] + dist[static_cast<std::size_t>(inner)] + 2,
                  Back{2, outer, call, inner, r});
        }
    }
    // Returns the first finalized goal item or -1.
    long run() {
        open(a.initial, kBottom);
        while (!pq.empty()) {
            auto [d, it] = pq.top();
            pq.pop();
            auto u = static_cast<std::size_t>(it);
            if (fin[u] || d != dist[u]) continue;
            fin[u] = 1;
            int p = static_cast<int>(u / (ng * nq));
            int g = static_cast<int>((u / nq) % ng);
            int q = static_cast<int>(u % nq);
            if (p == a.initial && g == kBottom && a.is_final(q)) return it;
            for (Symbol c : a.alphabet.ints()) relax(id(p, g, a.next(q, c, g)), d + 1, Back{1, it, c});
            for (Symbol c : a.alphabet.calls()) {
                int p2 = a.next(q, c, g), b = a.pushed(q, c, g);
                auto e = static_cast<std::size_t>(p2) * ng + static_cast<std::size_t>(b);
                waiting[e].push_back({it, c});
                open(p2, b);
                for (long inner : finished_at[e]) combine(it, c, inner);
            }
            auto e = static_cast<std::size_t>(p) * ng + static_cast<std::size_t>(g);
            finished_at[e].push_back(it);
            for (auto [outer, c] : waiting[e]) combine(outer, c, it);
        }
        return -1;
    }
    void word(long it, Word& out) const {
        const Back& b = back[static_cast<std::size_t>(it)];
        if (b.kind == 0) return;
        word(b.prev, out);
        out.push_back(b.s1);
        if (b.kind == 2) {
            word(b.inner, out);
            out.push_back(b.s2);
        }
    }
};

}  // namespace

EmptinessResult dvpa_emptiness(const Dvpa& a) {
    Dvpa t = dvpa_trim(a);
    Summaries s(t);
    long goal = s.run();
    EmptinessResult r;
    if (goal < 0) return r;
    r.empty = false;
    Word w;
    s.word(goal, w);
    r.witness = w;
    return r;
}

EquivalenceResult dvpa_equivalence(const Dvpa& a, const Dvpa& b) {
    if (a.alphabet != b.alphabet) throw InvalidInput("alphabet mismatch");
    Dvpa na = dvpa_complement(a), nb = dvpa_complement(b);
    Dvpa x = dvpa_union(dvpa_intersect(a, nb), dvpa_intersect(na, b));
    auto e = dvpa_emptiness(x);
    EquivalenceResult r;
    r.equal = e.empty;
    r.witness = e.witness;
    return r;
}

void Nvpa::validate() const {
    if (stack.empty() || stack[0] != kBottomName) throw InvalidInput("nvpa: stack must start with bottom");
    if (finals.size() != states.size()) throw InvalidInput("nvpa: finals size mismatch");
    for (int i : initials)
        if (i < 0 || static_cast<std::size_t>(i) >= states.size()) throw InvalidInput("nvpa: bad initial");
    for (const auto& t : trans) {
        if (t.from < 0 || static_cast<std::size_t>(t.from) >= states.size() || t.to < 0 ||
            static_cast<std::size_t>(t.to) >= states.size())
            throw InvalidInput("nvpa: transition state out of range");
        if (t.sym < 0 || static_cast<std::size_t>(t.sym) >= alphabet.size())
            throw InvalidInput("nvpa: transition symbol out of range");
        if (t.top < -1 || t.top >= static_cast<int>(stack.size())) throw InvalidInput("nvpa: bad top");
        Kind k = alphabet.kind(t.sym);
        if (k == Kind::Call && (t.push <= 0 || static_cast<std::size_t>(t.push) >= stack.size()))
            throw InvalidInput("nvpa: call must push a non-bottom symbol");
        if (k != Kind::Call && t.push != -1) throw InvalidInput("nvpa: only calls push");
        if (k == Kind::Ret && t.top < 0) throw InvalidInput("nvpa: return needs an explicit top");
    }
}

bool nvpa_accepts(const Nvpa& n, const Word& w) {
    // Configurations as (state, stack) sets; fine for the short words tests use.
    std::set<std::pair<int, std::vector<int>>> cur;
    for (int i : n.initials) cur.insert({i, {kBottom}});
    for (Symbol s : w) {
        std::set<std::pair<int, std::vector<int>>> nxt;
        for (const auto& [q, st] : cur) {
            int top = st.back();
            for (const auto& t : n.trans) {
                if (t.from != q || t.sym != s) continue;
                if (t.top != -1 && t.top != top) continue;
                auto ns = st;
                switch (n.alphabet.kind(s)) {
                    case Kind::Call: ns.push_back(t.push); break;
                    case Kind::Ret: ns.pop_back(); break;
                    case Kind::Int: break;
                }
                if (!ns.empty()) nxt.insert({t.to, ns});
            }
        }
        cur.swap(nxt);
    }
    for (const auto& [q, st] : cur)
        if (st.size() == 1 && n.finals[static_cast<std::size_t>(q)]) return true;
    return false;
}

Dvpa nvpa_determinize(const Nvpa& n, const Budgets& budgets) {
    n.validate();
    const auto& al = n.alphabet;
    using Triple = std::tuple<int, int, int>;  // (level entry state, level top, current state)
    using DState = std::vector<Triple>;
    std::map<DState, int> sidx;
    std::vector<DState> sts;
    std::map<std::pair<int, Symbol>, int> gidx;  // (det state before call, call) -> stack id
    std::vector<std::pair<int, Symbol>> gs;
    auto state_id = [&](DState s) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        auto it = sidx.find(s);
        if (it != sidx.end()) return it->second;
        int id = static_cast<int>(sts.size());
        if (sts.size() >= budgets.closure) throw BudgetExceeded("determinize", "too many states");
        sidx.emplace(s, id);
        sts.push_back(std::move(s));
        return id;
    };
    auto stack_id = [&](int s, Symbol c) {
        auto key = std::make_pair(s, c);
        auto it = gidx.find(key);
        if (it != gidx.end()) return it->second;
        int id = static_cast<int>(gs.size()) + 1;
        gidx.emplace(key, id);
        gs.push_back(key);
        return id;
    };
    // Transitions indexed by (from, sym).
    std::vector<std::vector<const NvpaTransition*>> by(n.states.size() * al.size());
    for (const auto& t : n.trans) by[static_cast<std::size_t>(t.from) * al.size() + static_cast<std::size_t>(t.sym)].push_back(&t);
    auto out = [&](int q, Symbol s) -> const std::vector<const NvpaTransition*>& {
        return by[static_cast<std::size_t>(q) * al.size() + static_cast<std::size_t>(s)];
    };

    DState init;
    for (int i : n.initials) init.emplace_back(i, kBottom, i);
    state_id(init);
    // Entries: (state, top, sym) -> (target, push); top 0 is bottom.
    std::map<std::tuple<int, int, Symbol>, std::pair<int, int>> table;
    std::vector<std::size_t> tops_done;  // per state: tops already expanded
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t si = 0; si < sts.size(); ++si) {
            if (si >= tops_done.size()) tops_done.push_back(0);
            for (std::size_t g = tops_done[si]; g < gs.size() + 1; ++g) {
                progress = true;
                for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s) {
                    DState ns;
                    int pushed = -1;
                    const DState cur = sts[si];
                    switch (al.kind(s)) {
                        case Kind::Int:
                            for (auto [p, gam, q] : cur)
                                for (auto* t : out(q, s))
                                    if (t->top == -1 || t->top == gam) ns.emplace_back(p, gam, t->to);
                            break;
                        case Kind::Call:
                            for (auto [p, gam, q] : cur)
                                for (auto* t : out(q, s))
                                    if (t->top == -1 || t->top == gam) ns.emplace_back(t->to, t->push, t->to);
                            pushed = stack_id(static_cast<int>(si), s);
                            break;
                        case Kind::Ret: {
                            if (g == 0) break;  // pops the bottom: dead
                            auto [prev, c] = gs[g - 1];
                            const DState pv = sts[static_cast<std::size_t>(prev)];
                            std::map<std::pair<int, int>, std::vector<int>> reach;
                            for (auto [p1, g1, q2] : cur) reach[{p1, g1}].push_back(q2);
                            for (auto [p, gam, q] : pv)
                                for (auto* tc : out(q, c)) {
                                    if (tc->top != -1 && tc->top != gam) continue;
                                    auto it = reach.find({tc->to, tc->push});
                                    if (it == reach.end()) continue;
                                    for (int q2 : it->second)
                                        for (auto* tr : out(q2, s))
                                            if (tr->top == tc->push) ns.emplace_back(p, gam, tr->to);
                                }
                            break;
                        }
                    }
                    int t = state_id(ns);
                    table[{static_cast<int>(si), static_cast<int>(g), s}] = {t, pushed};
                }
                tops_done[si] = g + 1;
            }
        }
    }
    std::vector<std::string> qn, gn;
    for (std::size_t i = 0; i < sts.size(); ++i) qn.push_back("S" + std::to_string(i));
    for (auto [s, c] : gs) gn.push_back("S" + std::to_string(s) + "/" + al.name(c));
    Dvpa d(al, qn, gn);
    d.initial = 0;
    for (std::size_t i = 0; i < sts.size(); ++i)
        for (auto [p, gam, q] : sts[i])
            if (gam == kBottom && n.finals[static_cast<std::size_t>(q)]) d.finals[i] = 1;
    for (const auto& [k, v] : table) {
        auto [si, g, s] = k;
        d.set(si, s, g, v.first, v.second);
    }
    d.validate();
    return dvpa_trim(d);
}

void Vvpg::validate() const {
    if (start < 0 || static_cast<std::size_t>(start) >= nonterminals.size())
        throw InvalidInput("vvpg: start out of range");
    auto shape = [&](const Word& w, Kind want) {
        // (int* want int*)+
        bool seen = false;
        for (Symbol s : w) {
            Kind k = alphabet.kind(s);
            if (k == want) seen = true;
            else if (k != Kind::Int) return false;
        }
        return seen;
    };
    for (const auto& p : prods) {
        if (p.lhs < 0 || static_cast<std::size_t>(p.lhs) >= nonterminals.size() || p.rhs < 0 ||
            static_cast<std::size_t>(p.rhs) >= nonterminals.size())
            throw InvalidInput("vvpg: nonterminal out of range");
        check_word(alphabet, p.u);
        check_word(alphabet, p.v);
        if (!shape(p.u, Kind::Call) || !shape(p.v, Kind::Ret))
            throw InvalidInput("vvpg: production sides must have shape (int* call int*)+ / (int* ret int*)+");
        if (!is_well_matched(alphabet, concat(p.u, p.v)))
            throw InvalidInput("vvpg: production uv is not well-matched");
    }
}

bool vvpg_derives(const Vvpg& g, const Word& w) {
    std::size_t n = w.size();
    std::map<std::tuple<int, std::size_t, std::size_t>, bool> memo;
    std::function<bool(int, std::size_t, std::size_t)> d = [&](int t, std::size_t i, std::size_t j) -> bool {
        if (i == j) return t == g.start;
        auto key = std::make_tuple(t, i, j);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool ok = false;
        for (const auto& p : g.prods) {
            if (p.lhs != t || p.u.size() + p.v.size() > j - i) continue;
            if (!std::equal(p.u.begin(), p.u.end(), w.begin() + static_cast<long>(i))) continue;
            if (!std::equal(p.v.begin(), p.v.end(), w.begin() + static_cast<long>(j - p.v.size()))) continue;
            if (d(p.rhs, i + p.u.size(), j - p.v.size())) {
                ok = true;
                break;
            }
        }
        memo[key] = ok;
        return ok;
    };
    return d(g.start, 0, n);
}

Nvpa vvpg_to_nvpa(const Vvpg& g) {
    g.validate();
    const auto& al = g.alphabet;
    Nvpa n;
    n.alphabet = al;
    // State layout: 0 START, 1 END, then (p,U,i) and (p,V,j) blocks.
    n.states = {"start", "end"};
    std::vector<int> ubase(g.prods.size()), vbase(g.prods.size()), ncalls(g.prods.size());
    for (std::size_t p = 0; p < g.prods.size(); ++p) {
        ubase[p] = static_cast<int>(n.states.size());
        for (std::size_t i = 0; i < g.prods[p].u.size(); ++i)
            n.states.push_back("p" + std::to_string(p) + "U" + std::to_string(i));
        vbase[p] = static_cast<int>(n.states.size());
        for (std::size_t j = 0; j < g.prods[p].v.size(); ++j)
            n.states.push_back("p" + std::to_string(p) + "V" + std::to_string(j));
        int c = 0;
        for (Symbol s : g.prods[p].u) c += al.kind(s) == Kind::Call;
        ncalls[p] = c;
    }
    n.finals.assign(n.states.size(), 0);
    n.finals[0] = 1;
    n.finals[1] = 1;
    n.stack = {kBottomName};
    std::vector<int> sbase(g.prods.size());
    for (std::size_t p = 0; p < g.prods.size(); ++p) {
        sbase[p] = static_cast<int>(n.stack.size());
        for (int c = 0; c < ncalls[p]; ++c) n.stack.push_back("p" + std::to_string(p) + "c" + std::to_string(c));
    }
    n.initials.push_back(0);
    for (std::size_t p = 0; p < g.prods.size(); ++p)
        if (g.prods[p].lhs == g.start) n.initials.push_back(ubase[p]);

    // Targets after reading position i of u_p.
    auto u_next = [&](std::size_t p, std::size_t i) {
        std::vector<int> t;
        const auto& pr = g.prods[p];
        if (i + 1 < pr.u.size()) {
            t.push_back(ubase[p] + static_cast<int>(i) + 1);
            return t;
        }
        for (std::size_t p2 = 0; p2 < g.prods.size(); ++p2)
            if (g.prods[p2].lhs == pr.rhs) t.push_back(ubase[p2]);
        if (pr.rhs == g.start) t.push_back(vbase[p]);
        return t;
    };
    auto v_next = [&](std::size_t p, std::size_t j) {
        return j + 1 < g.prods[p].v.size() ? vbase[p] + static_cast<int>(j) + 1 : 1;
    };
    // Reading v_p[j] from state `from`, with the level's top fixed to `top` (for internals)
    // or popping `top` (for returns).
    auto emit_v = [&](int from, std::size_t p, std::size_t j, int top_for_int) {
        const auto& pr = g.prods[p];
        Symbol s = pr.v[j];
        if (al.kind(s) == Kind::Int) {
            n.trans.push_back({from, s, top_for_int, v_next(p, j), -1});
        } else {
            int r = 0;
            for (std::size_t k = 0; k <= j; ++k) r += al.kind(pr.v[k]) == Kind::Ret;
            int c = ncalls[p] - r;  // 0-based call ordinal matched by this return
            n.trans.push_back({from, s, sbase[p] + c, v_next(p, j), -1});
        }
    };
    for (std::size_t p = 0; p < g.prods.size(); ++p) {
        const auto& pr = g.prods[p];
        int c = 0;
        for (std::size_t i = 0; i < pr.u.size(); ++i) {
            Symbol s = pr.u[i];
            for (int t : u_next(p, i)) {
                if (al.kind(s) == Kind::Call) n.trans.push_back({ubase[p] + static_cast<int>(i), s, -1, t, sbase[p] + c});
                else n.trans.push_back({ubase[p] + static_cast<int>(i), s, -1, t, -1});
            }
            if (al.kind(s) == Kind::Call) ++c;
        }
        // Inside v_p, an internal letter sees the top of p's last call, which is the
        // level of p's innermost return group; the automaton only needs the top for
        // returns, so internals accept any top.
        for (std::size_t j = 0; j < pr.v.size(); ++j) emit_v(vbase[p] + static_cast<int>(j), p, j, -1);
        // From END the next v belongs to the production owning the top symbol.
        if (ncalls[p] > 0 && !pr.v.empty()) {
            int last = sbase[p] + ncalls[p] - 1;
            Symbol s0 = pr.v[0];
            if (al.kind(s0) == Kind::Int) n.trans.push_back({1, s0, last, v_next(p, 0), -1});
            else emit_v(1, p, 0, -1);
        }
    }
    n.validate();
    return n;
}

void Vca::validate() const {
    if (threshold < 0) throw InvalidInput("vca: negative threshold");
    if (delta.size() != static_cast<std::size_t>(threshold) + 1) throw InvalidInput("vca: need m+1 transition maps");
    if (initial < 0 || static_cast<std::size_t>(initial) >= states.size()) throw InvalidInput("vca: bad initial");
    if (finals.size() != states.size()) throw InvalidInput("vca: finals size mismatch");
    for (const auto& d : delta) {
        if (d.size() != states.size() * alphabet.size()) throw InvalidInput("vca: transition map not total");
        for (int t : d)
            if (t < 0 || static_cast<std::size_t>(t) >= states.size()) throw InvalidInput("vca: bad target");
    }
}

bool vca_accepts(const Vca& v, const Word& w) {
    check_word(v.alphabet, w);
    int q = v.initial;
    long h = 0;
    for (Symbol s : w) {
        auto lvl = static_cast<std::size_t>(std::min<long>(h, v.threshold));
        q = v.delta[lvl][static_cast<std::size_t>(q) * v.alphabet.size() + static_cast<std::size_t>(s)];
        h += symbol_height(v.alphabet, s);
        if (h < 0) return false;
    }
    return h == 0 && v.finals[static_cast<std::size_t>(q)];
}

Dvpa vca_to_dvpa(const Vca& v) {
    v.validate();
    const auto& al = v.alphabet;
    int m = v.threshold;
    std::vector<std::string> qn, gn;
    for (std::size_t q = 0; q < v.states.size(); ++q)
        for (int i = 0; i <= m; ++i) qn.push_back("(" + v.states[q] + "," + std::to_string(i) + ")");
    for (int i = 0; i <= m; ++i) gn.push_back("h" + std::to_string(i));
    Dvpa d(al, qn, gn);
    auto sid = [&](int q, int i) { return q * (m + 1) + i; };
    d.initial = sid(v.initial, 0);
    for (std::size_t q = 0; q < v.states.size(); ++q)
        d.finals[static_cast<std::size_t>(sid(static_cast<int>(q), 0))] = v.finals[q];
    for (int q = 0; q < static_cast<int>(v.states.size()); ++q)
        for (int i = 0; i <= m; ++i)
            for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s) {
                int t = v.delta[static_cast<std::size_t>(i)][static_cast<std::size_t>(q) * al.size() + static_cast<std::size_t>(s)];
                for (int g = 0; g < static_cast<int>(d.num_stack()); ++g) {
                    switch (al.kind(s)) {
                        case Kind::Int: d.set(sid(q, i), s, g, sid(t, i)); break;
                        case Kind::Call: d.set(sid(q, i), s, g, sid(t, std::min(i + 1, m)), 1 + i); break;
                        case Kind::Ret: {
                            // The popped symbol stores the capped height below it.
                            int below = g == kBottom ? 0 : g - 1;
                            d.set(sid(q, i), s, g, sid(t, below));
                            break;
                        }
                    }
                }
            }
    return dvpa_trim(d);
}

}  // namespace vpl
