#include "vpl/parikh.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace vpl {

void Pda::validate() const {
    if (states.empty()) throw InvalidInput("pda: no states");
    if (stack.empty()) throw InvalidInput("pda: no bottom symbol");
    if (initial < 0 || static_cast<std::size_t>(initial) >= states.size()) throw InvalidInput("pda: bad initial state");
    if (finals.size() != states.size()) throw InvalidInput("pda: finals size mismatch");
    auto ns = static_cast<int>(states.size()), ni = static_cast<int>(input.size()), ng = static_cast<int>(stack.size());
    for (const auto& t : trans) {
        if (t.from < 0 || t.from >= ns || t.to < 0 || t.to >= ns || t.sym < 0 || t.sym >= ni || t.top < 0 || t.top >= ng)
            throw InvalidInput("pda: transition out of range");
        for (std::size_t i = 0; i < t.push.size(); ++i) {
            int y = t.push[i];
            if (y < 0 || y >= ng) throw InvalidInput("pda: pushed symbol out of range");
            bool last = i + 1 == t.push.size();
            if (t.top == 0 && (y == 0) != last) throw InvalidInput("pda: bottom must stay at the bottom");
            if (t.top != 0 && y == 0) throw InvalidInput("pda: bottom pushed above the bottom");
        }
        if (t.top == 0 && t.push.empty()) throw InvalidInput("pda: bottom popped");
    }
}

bool pda_accepts(const Pda& p, const std::vector<int>& w) {
    // Configurations with the stack stored bottom first.
    std::set<std::pair<int, std::vector<int>>> cur = {{p.initial, {0}}};
    for (int s : w) {
        std::set<std::pair<int, std::vector<int>>> next;
        for (const auto& [q, st] : cur)
            for (const auto& t : p.trans) {
                if (t.from != q || t.sym != s || t.top != st.back()) continue;
                std::vector<int> ns(st.begin(), st.end() - 1);
                for (std::size_t i = t.push.size(); i-- > 0;) ns.push_back(t.push[i]);
                next.emplace(t.to, std::move(ns));
            }
        cur = std::move(next);
        if (cur.empty()) return false;
    }
    return std::any_of(cur.begin(), cur.end(), [&](const auto& c) { return p.finals[static_cast<std::size_t>(c.first)]; });
}

Pda dvpa_to_pda(const Dvpa& a) {
    a.validate();
    const auto& al = a.alphabet;
    // State (q, h): h = 1 iff the stack is exactly the bottom. Stack symbol
    // (g, f) for g above the bottom: f = 1 iff it sits directly on the bottom.
    auto nq = static_cast<int>(a.num_states()), ng = static_cast<int>(a.num_stack());
    Pda p;
    for (int q = 0; q < nq; ++q)
        for (int h = 0; h < 2; ++h) p.states.push_back(a.states[static_cast<std::size_t>(q)] + (h ? "|0" : "|+"));
    for (const auto& s : al.int_names()) p.input.push_back(s);
    for (const auto& s : al.call_names()) p.input.push_back(s);
    for (const auto& s : al.ret_names()) p.input.push_back(s);
    p.stack.push_back(kBottomName);
    for (int g = 1; g < ng; ++g)
        for (int f = 0; f < 2; ++f) p.stack.push_back(a.stack[static_cast<std::size_t>(g)] + (f ? "|0" : "|+"));
    auto st = [](int q, int h) { return 2 * q + h; };
    auto sym = [](int g, int f) { return 1 + 2 * (g - 1) + f; };
    p.initial = st(a.initial, 1);
    p.finals.assign(p.states.size(), 0);
    for (int q = 0; q < nq; ++q) p.finals[static_cast<std::size_t>(st(q, 1))] = a.is_final(q) ? 1 : 0;
    for (int q = 0; q < nq; ++q)
        for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s) {
            // tops: bottom (h = 1) or (g, f) (h = 0)
            std::vector<std::pair<int, int>> tops = {{0, -1}};
            for (int g = 1; g < ng; ++g)
                for (int f = 0; f < 2; ++f) tops.push_back({g, f});
            for (auto [g, f] : tops) {
                int h = g == 0 ? 1 : 0;
                int X = g == 0 ? 0 : sym(g, f);
                int to = a.next(q, s, g);
                switch (al.kind(s)) {
                    case Kind::Int: p.trans.push_back({st(q, h), s, X, st(to, h), {X}}); break;
                    case Kind::Call: {
                        int pushed = a.pushed(q, s, g);
                        p.trans.push_back({st(q, h), s, X, st(to, 0), {sym(pushed, h), X}});
                        break;
                    }
                    case Kind::Ret:
                        if (g != 0) p.trans.push_back({st(q, h), s, X, st(to, f), {}});
                        break;
                }
            }
        }
    return p;
}

Pda length_project(const Pda& p, int marker) {
    if (marker < 0 || static_cast<std::size_t>(marker) >= p.input.size())
        throw InvalidInput("length_project: marker not in the input alphabet");
    Pda r;
    for (const auto& s : p.states) {
        r.states.push_back(s + "/0");
        r.states.push_back(s + "/1");
    }
    r.input = {"0", "#", "1"};
    r.stack = p.stack;
    r.initial = 2 * p.initial;
    r.finals.assign(r.states.size(), 0);
    for (std::size_t q = 0; q < p.states.size(); ++q) r.finals[2 * q + 1] = p.finals[q];
    std::set<std::tuple<int, int, int, int, std::vector<int>>> seen;
    auto add = [&](PdaTransition t) {
        if (seen.emplace(t.from, t.sym, t.top, t.to, t.push).second) r.trans.push_back(std::move(t));
    };
    for (const auto& t : p.trans) {
        if (t.sym == marker) {
            add({2 * t.from, kLenMarker, t.top, 2 * t.to + 1, t.push});
        } else {
            add({2 * t.from, kLen0, t.top, 2 * t.to, t.push});
            add({2 * t.from + 1, kLen1, t.top, 2 * t.to + 1, t.push});
        }
    }
    return r;
}

Cfg pda_to_cfg(const Pda& p) {
    p.validate();
    Cfg g;
    g.terminals = p.input;
    std::map<std::tuple<int, int, int, int>, int> ids;  // (kind, p, X, q)
    std::vector<std::tuple<int, int, int, int>> work;
    auto get = [&](int kind, int a, int X, int b) {
        auto key = std::make_tuple(kind, a, X, b);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(g.nonterminals.size());
        ids.emplace(key, id);
        g.nonterminals.push_back(kind == 0 ? "[" + p.states[static_cast<std::size_t>(a)] + "," + p.stack[static_cast<std::size_t>(X)] + "," +
                                                 p.states[static_cast<std::size_t>(b)] + "]"
                                           : "<" + p.states[static_cast<std::size_t>(a)] + "," + p.stack[static_cast<std::size_t>(X)] + ">");
        work.push_back(key);
        return id;
    };
    std::vector<std::vector<const PdaTransition*>> by_from(p.states.size() * p.stack.size());
    for (const auto& t : p.trans) by_from[static_cast<std::size_t>(t.from) * p.stack.size() + static_cast<std::size_t>(t.top)].push_back(&t);
    auto nq = static_cast<int>(p.states.size());
    g.start = get(1, p.initial, 0, 0);
    for (std::size_t w = 0; w < work.size(); ++w) {
        auto [kind, a, X, b] = work[w];
        int lhs = ids.at(work[w]);
        if (kind == 1 && p.finals[static_cast<std::size_t>(a)]) g.prods.push_back({lhs, {}});
        for (const PdaTransition* t : by_from[static_cast<std::size_t>(a) * p.stack.size() + static_cast<std::size_t>(X)]) {
            const auto& ys = t->push;
            if (kind == 0) {
                if (ys.empty()) {
                    if (t->to == b) g.prods.push_back({lhs, {t->sym}});
                    continue;
                }
                // [t.to Y1 s1][s1 Y2 s2]...[s_{k-1} Yk b]
                std::vector<int> mids(ys.size() - 1, 0);
                while (true) {
                    std::vector<int> rhs = {t->sym};
                    int cur = t->to;
                    for (std::size_t i = 0; i < ys.size(); ++i) {
                        int nxt = i + 1 < ys.size() ? mids[i] : b;
                        rhs.push_back(Cfg::nt(get(0, cur, ys[i], nxt)));
                        cur = nxt;
                    }
                    g.prods.push_back({lhs, std::move(rhs)});
                    std::size_t i = 0;
                    while (i < mids.size() && ++mids[i] == nq) mids[i++] = 0;
                    if (i == mids.size()) break;
                }
            } else {
                for (std::size_t j = 0; j < ys.size(); ++j) {
                    std::vector<int> mids(j, 0);
                    while (true) {
                        std::vector<int> rhs = {t->sym};
                        int cur = t->to;
                        for (std::size_t i = 0; i < j; ++i) {
                            rhs.push_back(Cfg::nt(get(0, cur, ys[i], mids[i])));
                            cur = mids[i];
                        }
                        rhs.push_back(Cfg::nt(get(1, cur, ys[j], 0)));
                        g.prods.push_back({lhs, std::move(rhs)});
                        std::size_t i = 0;
                        while (i < mids.size() && ++mids[i] == nq) mids[i++] = 0;
                        if (i == mids.size()) break;
                    }
                }
            }
        }
    }
    return cfg_trim(g);
}

Cfg cfg_trim(const Cfg& g) {
    std::size_t n = g.nonterminals.size();
    std::vector<char> prod(n, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.prods) {
            if (prod[static_cast<std::size_t>(p.lhs)]) continue;
            bool ok = std::all_of(p.rhs.begin(), p.rhs.end(), [&](int s) {
                return !Cfg::is_nt(s) || prod[static_cast<std::size_t>(Cfg::nt_index(s))];
            });
            if (ok) {
                prod[static_cast<std::size_t>(p.lhs)] = 1;
                changed = true;
            }
        }
    }
    std::vector<std::vector<const CfgProduction*>> by_lhs(n);
    for (const auto& p : g.prods) {
        bool ok = prod[static_cast<std::size_t>(p.lhs)] && std::all_of(p.rhs.begin(), p.rhs.end(), [&](int s) {
                      return !Cfg::is_nt(s) || prod[static_cast<std::size_t>(Cfg::nt_index(s))];
                  });
        if (ok) by_lhs[static_cast<std::size_t>(p.lhs)].push_back(&p);
    }
    std::vector<int> newid(n, -1);
    std::vector<int> order;
    auto visit = [&](int x) {
        if (newid[static_cast<std::size_t>(x)] < 0) {
            newid[static_cast<std::size_t>(x)] = static_cast<int>(order.size());
            order.push_back(x);
        }
    };
    visit(g.start);
    if (prod[static_cast<std::size_t>(g.start)])
        for (std::size_t i = 0; i < order.size(); ++i)
            for (const auto* p : by_lhs[static_cast<std::size_t>(order[i])])
                for (int s : p->rhs)
                    if (Cfg::is_nt(s)) visit(Cfg::nt_index(s));
    Cfg r;
    r.terminals = g.terminals;
    r.start = 0;
    for (int x : order) r.nonterminals.push_back(g.nonterminals[static_cast<std::size_t>(x)]);
    if (!prod[static_cast<std::size_t>(g.start)]) return r;
    for (int x : order)
        for (const auto* p : by_lhs[static_cast<std::size_t>(x)]) {
            CfgProduction q{newid[static_cast<std::size_t>(x)], {}};
            for (int s : p->rhs) q.rhs.push_back(Cfg::is_nt(s) ? Cfg::nt(newid[static_cast<std::size_t>(Cfg::nt_index(s))]) : s);
            r.prods.push_back(std::move(q));
        }
    return r;
}

bool cfg_derives(const Cfg& g, const std::vector<int>& w) {
    std::size_t n = w.size(), nn = g.nonterminals.size();
    // table[i][j][X]: X derives w[i, j)
    std::vector<std::vector<std::vector<char>>> tab(n + 1, std::vector<std::vector<char>>(n + 1, std::vector<char>(nn, 0)));
    for (std::size_t len = 0; len <= n; ++len)
        for (std::size_t i = 0; i + len <= n; ++i) {
            std::size_t j = i + len;
            bool changed = true;
            while (changed) {
                changed = false;
                for (const auto& p : g.prods) {
                    if (tab[i][j][static_cast<std::size_t>(p.lhs)]) continue;
                    std::set<std::size_t> reach = {i};
                    for (int s : p.rhs) {
                        std::set<std::size_t> next;
                        for (std::size_t pos : reach) {
                            if (!Cfg::is_nt(s)) {
                                if (pos < j && w[pos] == s) next.insert(pos + 1);
                            } else {
                                auto X = static_cast<std::size_t>(Cfg::nt_index(s));
                                for (std::size_t q = pos; q <= j; ++q)
                                    if (tab[pos][q][X]) next.insert(q);
                            }
                        }
                        reach = std::move(next);
                        if (reach.empty()) break;
                    }
                    if (reach.count(j)) {
                        tab[i][j][static_cast<std::size_t>(p.lhs)] = 1;
                        changed = true;
                    }
                }
            }
        }
    return nn > 0 && tab[0][n][static_cast<std::size_t>(g.start)];
}

namespace {

template <class W>
struct Mono {
    W coef;
    std::vector<int> vars;
};

struct UpOps {
    UpSet zero() const { return UpSet::empty(); }
    UpSet one() const { return UpSet::zero(); }
    UpSet plus(const UpSet& a, const UpSet& b) const { return a.unite(b); }
    UpSet times(const UpSet& a, const UpSet& b) const { return a.add(b); }
    UpSet star(const UpSet& a) const { return a.star(); }
    bool is_zero(const UpSet& a) const { return a.is_empty(); }
};

struct SlOps {
    int dim;
    SemilinearSet zero() const { return SemilinearSet::empty(dim); }
    SemilinearSet one() const { return SemilinearSet::zero(dim); }
    SemilinearSet plus(const SemilinearSet& a, const SemilinearSet& b) const { return a.unite(b); }
    SemilinearSet times(const SemilinearSet& a, const SemilinearSet& b) const { return a.add(b); }
    SemilinearSet star(const SemilinearSet& a) const { return a.star(); }
    bool is_zero(const SemilinearSet& a) const { return a.is_empty(); }
};

// Least solution over one strongly connected block of a polynomial system in a
// commutative idempotent semiring with star. Variables outside the block are
// already solved in `val`. Newton iteration; a linear block needs one step.
template <class W, class Ops>
void solve_block(const std::vector<int>& block, const std::vector<std::vector<Mono<W>>>& eqs,
                 std::vector<std::optional<W>>& val, const Ops& ops) {
    std::map<int, int> pos;
    for (std::size_t i = 0; i < block.size(); ++i) pos[block[i]] = static_cast<int>(i);
    std::size_t n = block.size();
    bool linear = true;
    for (int x : block)
        for (const auto& m : eqs[static_cast<std::size_t>(x)]) {
            int k = 0;
            for (int v : m.vars) k += pos.count(v) ? 1 : 0;
            if (k > 1) linear = false;
        }
    auto value = [&](int v, const std::vector<W>& nu) -> const W& {
        auto it = pos.find(v);
        return it != pos.end() ? nu[static_cast<std::size_t>(it->second)] : *val[static_cast<std::size_t>(v)];
    };
    std::vector<W> nu(n, ops.zero());
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& m : eqs[static_cast<std::size_t>(block[i])]) {
            bool inner = std::any_of(m.vars.begin(), m.vars.end(), [&](int v) { return pos.count(v) > 0; });
            if (inner) continue;
            W p = m.coef;
            for (int v : m.vars) p = ops.times(p, value(v, nu));
            nu[i] = ops.plus(nu[i], p);
        }
    std::size_t steps = linear ? 1 : n;
    for (std::size_t step = 0; step < steps; ++step) {
        std::vector<W> c(n, ops.zero());
        std::vector<std::vector<W>> M(n, std::vector<W>(n, ops.zero()));
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& m : eqs[static_cast<std::size_t>(block[i])]) {
                W p = m.coef;
                for (int v : m.vars) p = ops.times(p, value(v, nu));
                c[i] = ops.plus(c[i], p);
                for (std::size_t j = 0; j < m.vars.size(); ++j) {
                    auto it = pos.find(m.vars[j]);
                    if (it == pos.end()) continue;
                    W q = m.coef;
                    for (std::size_t k = 0; k < m.vars.size(); ++k)
                        if (k != j) q = ops.times(q, value(m.vars[k], nu));
                    auto& cell = M[i][static_cast<std::size_t>(it->second)];
                    cell = ops.plus(cell, q);
                }
            }
        // Y = c + M Y by elimination.
        for (std::size_t i = 0; i < n; ++i) {
            if (!ops.is_zero(M[i][i])) {
                W s = ops.star(M[i][i]);
                M[i][i] = ops.zero();
                c[i] = ops.times(s, c[i]);
                for (std::size_t j = 0; j < n; ++j)
                    if (!ops.is_zero(M[i][j])) M[i][j] = ops.times(s, M[i][j]);
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || ops.is_zero(M[k][i])) continue;
                W f = M[k][i];
                M[k][i] = ops.zero();
                c[k] = ops.plus(c[k], ops.times(f, c[i]));
                for (std::size_t j = 0; j < n; ++j)
                    if (j != i && !ops.is_zero(M[i][j])) M[k][j] = ops.plus(M[k][j], ops.times(f, M[i][j]));
            }
        }
        bool same = true;
        for (std::size_t i = 0; i < n; ++i)
            if (!(c[i] == nu[i])) same = false;
        nu = std::move(c);
        if (same) break;
    }
    for (std::size_t i = 0; i < n; ++i) val[static_cast<std::size_t>(block[i])] = nu[i];
}

// Tarjan over the nonterminal dependency graph; blocks come out callees first.
std::vector<std::vector<int>> dependency_blocks(std::size_t n, const std::vector<std::set<int>>& succ) {
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on(n, 0);
    std::vector<int> st;
    std::vector<std::vector<int>> out;
    int counter = 0;
    std::function<void(int)> go = [&](int v) {
        index[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = counter++;
        st.push_back(v);
        on[static_cast<std::size_t>(v)] = 1;
        for (int w : succ[static_cast<std::size_t>(v)]) {
            if (index[static_cast<std::size_t>(w)] < 0) {
                go(w);
                low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(w)]);
            } else if (on[static_cast<std::size_t>(w)]) {
                low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]);
            }
        }
        if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
            std::vector<int> comp;
            while (true) {
                int w = st.back();
                st.pop_back();
                on[static_cast<std::size_t>(w)] = 0;
                comp.push_back(w);
                if (w == v) break;
            }
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] < 0) go(static_cast<int>(v));
    return out;
}

}  // namespace

SemilinearSet parikh_image(const Cfg& g0, const std::vector<int>& tracked, std::size_t budget) {
    int dim = static_cast<int>(tracked.size());
    Cfg g = cfg_trim(g0);
    if (g.prods.empty()) return SemilinearSet::empty(dim);
    std::size_t n = g.nonterminals.size();
    if (n > budget) throw BudgetExceeded("parikh", std::to_string(n) + " nonterminals");
    std::map<int, int> axis_of;
    for (int i = 0; i < dim; ++i) axis_of[tracked[static_cast<std::size_t>(i)]] = i;
    // Terminal counts and variable lists per production.
    std::vector<std::set<int>> succ(n);
    std::vector<std::set<int>> support(n);
    struct Flat {
        Vec counts;
        std::vector<int> vars;
    };
    std::vector<std::vector<Flat>> flat(n);
    for (const auto& p : g.prods) {
        Flat f{Vec(static_cast<std::size_t>(dim), 0), {}};
        for (int s : p.rhs) {
            if (Cfg::is_nt(s)) {
                f.vars.push_back(Cfg::nt_index(s));
                succ[static_cast<std::size_t>(p.lhs)].insert(Cfg::nt_index(s));
            } else if (auto it = axis_of.find(s); it != axis_of.end()) {
                ++f.counts[static_cast<std::size_t>(it->second)];
                support[static_cast<std::size_t>(p.lhs)].insert(it->second);
            }
        }
        flat[static_cast<std::size_t>(p.lhs)].push_back(std::move(f));
    }
    auto blocks = dependency_blocks(n, succ);
    // Supports close over callees (blocks are in callee-first order).
    for (const auto& b : blocks) {
        std::set<int> s;
        for (int x : b) {
            s.insert(support[static_cast<std::size_t>(x)].begin(), support[static_cast<std::size_t>(x)].end());
            for (int y : succ[static_cast<std::size_t>(x)])
                s.insert(support[static_cast<std::size_t>(y)].begin(), support[static_cast<std::size_t>(y)].end());
        }
        for (int x : b) support[static_cast<std::size_t>(x)] = s;
    }
    std::vector<std::optional<UpSet>> up(n);
    std::vector<std::optional<SemilinearSet>> sl(n);
    for (const auto& b : blocks) {
        const auto& sup = support[static_cast<std::size_t>(b[0])];
        if (sup.size() <= 1) {
            int axis = sup.empty() ? 0 : *sup.begin();
            std::vector<std::vector<Mono<UpSet>>> eqs(n);
            for (int x : b)
                for (const auto& f : flat[static_cast<std::size_t>(x)])
                    eqs[static_cast<std::size_t>(x)].push_back(
                        {dim ? UpSet::point(f.counts[static_cast<std::size_t>(axis)]) : UpSet::zero(), f.vars});
            solve_block(b, eqs, up, UpOps{});
            for (int x : b) sl[static_cast<std::size_t>(x)] = SemilinearSet::from_up(*up[static_cast<std::size_t>(x)], axis, std::max(dim, 1));
            if (dim == 0)
                for (int x : b) sl[static_cast<std::size_t>(x)] = up[static_cast<std::size_t>(x)]->is_empty() ? SemilinearSet::empty(0) : SemilinearSet::zero(0);
        } else {
            std::vector<std::vector<Mono<SemilinearSet>>> eqs(n);
            for (int x : b)
                for (const auto& f : flat[static_cast<std::size_t>(x)])
                    eqs[static_cast<std::size_t>(x)].push_back({SemilinearSet::point(f.counts), f.vars});
            solve_block(b, eqs, sl, SlOps{dim});
        }
    }
    return *sl[static_cast<std::size_t>(g.start)];
}

Cfg marked_length_cfg(const MorphismPresentation& m, const std::vector<char>& accepting, Symbol marker) {
    const auto& al = m.alphabet;
    const auto& A = m.alg;
    if (al.kind(marker) != Kind::Int) throw InvalidInput("marked_length_cfg: marker must be an internal letter");
    auto R = A.r_size;
    Cfg g;
    g.terminals = {"0", "#", "1"};
    auto a_of = [&](int r) { return r; };
    auto b_of = [&](int r) { return R + r; };
    auto m_of = [&](int r) { return 2 * R + r; };
    for (int r = 0; r < R; ++r) g.nonterminals.push_back("A" + std::to_string(r));
    for (int r = 0; r < R; ++r) g.nonterminals.push_back("B" + std::to_string(r));
    for (int r = 0; r < R; ++r) g.nonterminals.push_back("M" + std::to_string(r));
    g.nonterminals.push_back("S");
    g.start = 3 * R;
    auto nt = Cfg::nt;
    g.prods.push_back({a_of(A.r_one), {}});
    g.prods.push_back({b_of(A.r_one), {}});
    for (Symbol c : al.ints()) {
        int pc = m.phi_int[static_cast<std::size_t>(al.class_index(c))];
        for (int s = 0; s < R; ++s) {
            int r = A.mul(pc, s);
            if (c == marker) {
                g.prods.push_back({m_of(r), {kLenMarker, nt(b_of(s))}});
            } else {
                g.prods.push_back({a_of(r), {kLen0, nt(a_of(s))}});
                g.prods.push_back({b_of(r), {kLen1, nt(b_of(s))}});
                g.prods.push_back({m_of(r), {kLen0, nt(m_of(s))}});
            }
        }
    }
    std::set<std::pair<int, std::vector<int>>> seen;
    auto add = [&](int lhs, std::vector<int> rhs) {
        if (seen.emplace(lhs, rhs).second) g.prods.push_back({lhs, std::move(rhs)});
    };
    for (int p : m.psi) {
        const Map& e = A.o[static_cast<std::size_t>(p)];
        for (int x = 0; x < R; ++x)
            for (int s = 0; s < R; ++s) {
                int r = A.mul(e[static_cast<std::size_t>(x)], s);
                add(a_of(r), {kLen0, nt(a_of(x)), kLen0, nt(a_of(s))});
                add(b_of(r), {kLen1, nt(b_of(x)), kLen1, nt(b_of(s))});
                add(m_of(r), {kLen0, nt(a_of(x)), kLen0, nt(m_of(s))});
                add(m_of(r), {kLen0, nt(m_of(x)), kLen1, nt(b_of(s))});
            }
    }
    for (int r = 0; r < R; ++r)
        if (accepting[static_cast<std::size_t>(r)]) g.prods.push_back({g.start, {nt(m_of(r))}});
    return cfg_trim(g);
}

SemilinearSet parikh_of_recognizer(const MorphismPresentation& m, const std::vector<char>& accepting, Symbol marker) {
    return parikh_image(marked_length_cfg(m, accepting, marker), {kLen0, kLen1});
}

SemilinearSet parikh_of_marked(const Dvpa& a, Symbol marker) {
    // PDA input ids coincide with the alphabet's symbol ids.
    return parikh_image(pda_to_cfg(length_project(dvpa_to_pda(a), marker)), {kLen0, kLen1});
}

}  // namespace vpl
