#include "vpl/classifier.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "vpl/parikh.hpp"

namespace vpl {

Analysis::Analysis(MorphismPresentation m, std::vector<char> accepting, const Budgets& budgets)
    : m_(std::move(m)), acc_(std::move(accepting)), budgets_(budgets) {
    if (!m_.alg.o_complete) close_o(m_, budgets_);
    fr_ = f_reachable(m_.alg, acc_);
    om_ = vpl::o_monoid(m_.alg);
    for (int e = 0; e < om_.n; ++e)
        if (fr_.o[static_cast<std::size_t>(e)] && is_idempotent(om_, e)) idem_.push_back(e);
    mirror_ = mirror_presentation(m_);
}

const LeFamily& Analysis::le() const {
    if (!le_) le_ = std::make_unique<LeFamily>(m_, budgets_);
    return *le_;
}

const KeFamily& Analysis::ke() const {
    if (!ke_) ke_ = std::make_unique<KeFamily>(m_, budgets_);
    return *ke_;
}

const KeFamily& Analysis::ke_mirror() const {
    if (!ke_mirror_) ke_mirror_ = std::make_unique<KeFamily>(mirror_, budgets_);
    return *ke_mirror_;
}

namespace {

template <class F>
const SemilinearSet& cached(std::map<int, SemilinearSet>& cache, int e, F compute) {
    auto it = cache.find(e);
    if (it == cache.end()) it = cache.emplace(e, compute()).first;
    return it->second;
}

long norm(const Vec& v) { return std::accumulate(v.begin(), v.end(), 0L); }

void check_search(const Budgets& b, long len) {
    if (len > static_cast<long>(b.search_len))
        throw BudgetExceeded("search", "context search beyond length " + std::to_string(b.search_len));
}

}  // namespace

const SemilinearSet& Analysis::p_le(int e) const {
    return cached(p_le_, e, [&] { return le().parikh_Le(e, false); });
}
const SemilinearSet& Analysis::p_le_up(int e) const {
    return cached(p_le_up_, e, [&] { return le().parikh_Le(e, true); });
}
const SemilinearSet& Analysis::p_ke_up(int e, bool mirrored) const {
    if (mirrored) return cached(p_ke_up_mirror_, e, [&] { return ke_mirror().parikh_Ke(e, true); });
    return cached(p_ke_up_, e, [&] { return ke().parikh_Ke(e, true); });
}
const SemilinearSet& Analysis::s_e(int e) const {
    return cached(s_e_, e, [&] { return le().parikh_Me(e); });
}

std::optional<Context> find_context(const MorphismPresentation& m, long k, long l, int e, bool positive) {
    std::optional<Context> out;
    for_each_context(m.alphabet, static_cast<std::size_t>(k), static_cast<std::size_t>(l), [&](const Context& c) {
        if (positive && delta_height(m.alphabet, c.u) <= 0) return true;
        if (eval_psi(m, c) != e) return true;
        out = c;
        return false;
    });
    return out;
}

namespace {

// Two positive-height contexts with image e sharing one side; the other side has
// lengths k and l.
std::optional<ContextPair> shared_side_witness(const Analysis& an, int e, long k, long l, bool share_u) {
    const auto& m = an.presentation();
    const auto& al = m.alphabet;
    for (long s = 0; std::max(k, l) + s <= static_cast<long>(an.budgets().search_len); ++s) {
        auto collect = [&](long len) {
            std::map<Word, Context> by_shared;
            std::size_t ku = static_cast<std::size_t>(share_u ? s : len), lv = static_cast<std::size_t>(share_u ? len : s);
            for_each_context(al, ku, lv, [&](const Context& c) {
                if (delta_height(al, c.u) <= 0 || eval_psi(m, c) != e) return true;
                by_shared.emplace(share_u ? c.u : c.v, c);
                return true;
            });
            return by_shared;
        };
        auto a = collect(k), b = collect(l);
        for (const auto& [w, c] : a) {
            auto it = b.find(w);
            if (it == b.end()) continue;
            ContextPair p{c, it->second, {}};
            p.lengths = {static_cast<long>(c.u.size()), static_cast<long>(c.v.size()), static_cast<long>(it->second.u.size()),
                         static_cast<long>(it->second.v.size())};
            return p;
        }
    }
    return std::nullopt;
}

}  // namespace

WeakLsResult decide_weak_ls(const Analysis& an) {
    WeakLsResult r;
    for (bool mirrored : {false, true})
        for (int e : an.idempotents()) {
            auto w = semilinear_has_unequal_coords(an.p_ke_up(e, mirrored));
            if (!w) continue;
            r.ok = false;
            r.e = e;
            r.mirrored = mirrored;
            r.lengths = *w;
            r.contexts = shared_side_witness(an, e, (*w)[0], (*w)[1], mirrored);
            return r;
        }
    return r;
}

std::optional<Quad> ls_witness(const SemilinearSet& s) {
    auto first = s.min_member();
    if (!first) return std::nullopt;
    long bound = 0;
    for (const auto& c : s.components()) {
        long pmax = 0;
        for (const auto& p : c.periods) pmax = std::max(pmax, norm(p));
        bound = std::max(bound, norm(c.base) + pmax);
    }
    auto members = s.members_upto(bound);
    std::sort(members.begin(), members.end(), [](const Vec& a, const Vec& b) {
        if (norm(a) != norm(b)) return norm(a) < norm(b);
        return a > b;
    });
    const Vec& f = members.front();
    for (const auto& v : members)
        if (v[0] * f[1] != v[1] * f[0]) return Quad{f[0], f[1], v[0], v[1]};
    return std::nullopt;
}

LsResult decide_ls(const Analysis& an) {
    LsResult r;
    for (int e : an.idempotents()) {
        const auto& s = an.p_le_up(e);
        if (s.is_empty() || semilinear_all_collinear(s)) continue;
        auto q = ls_witness(s);
        if (!q) throw InternalError("non-collinear set without a witness");
        r.ok = false;
        r.e = e;
        r.quad = *q;
        return r;
    }
    return r;
}

namespace {

// Least common member by coordinate sum, larger left length first.
std::optional<Vec> common_lengths(const std::vector<SemilinearSet>& sets) {
    auto any = semilinear_intersect_nonempty(sets);
    if (!any) return std::nullopt;
    SemilinearSet all = sets[0];
    for (std::size_t i = 1; i < sets.size(); ++i) all = semilinear_intersect(all, sets[i]);
    auto members = all.members_upto(norm(*any));
    return *std::max_element(members.begin(), members.end());
}

}  // namespace

QaResult decide_quasi_aperiodic(const Analysis& an) {
    const auto& om = an.o_monoid();
    std::set<std::vector<int>> done;
    for (int g = 0; g < om.n; ++g) {
        std::vector<int> seq = {g};
        std::map<int, std::size_t> pos = {{g, 0}};
        std::size_t start = 0;
        while (true) {
            int nx = om.mul(seq.back(), g);
            auto it = pos.find(nx);
            if (it != pos.end()) {
                start = it->second;
                break;
            }
            pos.emplace(nx, seq.size());
            seq.push_back(nx);
        }
        std::vector<int> cycle(seq.begin() + static_cast<long>(start), seq.end());
        if (cycle.size() < 2) continue;
        // Rotate so that the cycle starts at its identity.
        std::size_t p = cycle.size(), id_at = 0;
        for (std::size_t i = 0; i < p; ++i)
            if (is_idempotent(om, cycle[i])) id_at = i;
        std::rotate(cycle.begin(), cycle.begin() + static_cast<long>(id_at), cycle.end());
        std::vector<int> key = cycle;
        std::sort(key.begin(), key.end());
        if (!done.insert(key).second) continue;
        const auto& le = an.le();
        if (std::any_of(cycle.begin(), cycle.end(), [&](int f) { return le.empty(le.le_pred(f, false)); })) continue;
        std::vector<SemilinearSet> sets;
        for (int f : cycle) sets.push_back(an.p_le(f));
        if (auto kl = common_lengths(sets)) return {false, cycle, *kl};
    }
    return {};
}

QaResult quasi_aperiodic_by_subsets(const Analysis& an, std::size_t max_o) {
    const auto& om = an.o_monoid();
    auto n = static_cast<std::size_t>(om.n);
    if (n > max_o) throw BudgetExceeded("search", "subset enumeration over more than " + std::to_string(max_o) + " operations");
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<int> u;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) u.push_back(static_cast<int>(i));
        if (u.size() < 2) continue;
        auto in = [&](int x) { return (mask >> static_cast<std::size_t>(x)) & 1; };
        bool closed = true;
        for (int x : u)
            for (int y : u) closed = closed && in(om.mul(x, y));
        if (!closed) continue;
        int id = -1;
        for (int x : u) {
            bool ok = true;
            for (int y : u) ok = ok && om.mul(x, y) == y && om.mul(y, x) == y;
            if (ok) id = x;
        }
        if (id < 0) continue;
        bool inverses = true;
        for (int x : u) {
            bool has = false;
            for (int y : u) has = has || (om.mul(x, y) == id && om.mul(y, x) == id);
            inverses = inverses && has;
        }
        if (!inverses) continue;
        std::vector<SemilinearSet> sets;
        for (int f : u) sets.push_back(an.p_le(f));
        if (auto kl = common_lengths(sets)) return {false, u, *kl};
    }
    return {};
}

ModWitness mod_m_witness(const Analysis& an, const QaResult& qa) {
    if (qa.ok || qa.group.size() < 2) throw InvalidInput("mod_m_witness needs a nontrivial group");
    const auto& m = an.presentation();
    const auto& om = an.o_monoid();
    auto p = static_cast<long>(qa.group.size());
    long prime = 2;
    while (p % prime != 0) ++prime;
    ModWitness w;
    w.m = static_cast<int>(prime);
    // The group is cyclic, listed from its identity as powers of a generator.
    w.identity = qa.group[0];
    int gen = qa.group[1];
    int h = w.identity;
    for (long i = 0; i < p / prime; ++i) h = om.mul(h, gen);
    w.generator = h;
    long k = qa.kl[0], l = qa.kl[1];
    check_search(an.budgets(), k + l);
    auto c0 = find_context(m, k, l, w.identity, false);
    auto c1 = find_context(m, k, l, w.generator, false);
    if (!c0 || !c1) throw InternalError("group element without a context at the common lengths");
    w.identity_ctx = *c0;
    w.generator_ctx = *c1;
    return w;
}

std::vector<int> compute_Z(const Analysis& an) {
    std::vector<int> z;
    const auto& fr = an.reachable();
    for (int e = 0; e < an.o_monoid().n; ++e) {
        if (!fr.o[static_cast<std::size_t>(e)]) continue;
        const auto& s = an.s_e(e);
        if (!s.is_empty() && !semilinear_all_collinear(s)) z.push_back(e);
    }
    return z;
}

std::vector<Word> PieceSets::left_words() const {
    std::vector<Word> out;
    for (int r : left)
        for (const auto& w : words.at(r)) out.push_back(w);
    return out;
}

std::vector<Word> PieceSets::right_words() const {
    std::vector<Word> out;
    for (int r : right)
        for (const auto& w : words.at(r)) out.push_back(w);
    return out;
}

namespace {

// lr[r][s]: the operation x -> r x s.
std::vector<std::vector<int>> sandwich_table(const ExtAlgebra& A) {
    std::vector<std::vector<int>> t(static_cast<std::size_t>(A.r_size), std::vector<int>(static_cast<std::size_t>(A.r_size)));
    for (int r = 0; r < A.r_size; ++r)
        for (int s = 0; s < A.r_size; ++s) t[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = A.compose(A.lambda(r), A.rho(s));
    return t;
}

// Grammar over {0} of the lengths of phi^{-1}(r), start set per call.
Cfg length_cfg(const MorphismPresentation& m) {
    const auto& al = m.alphabet;
    const auto& A = m.alg;
    Cfg g;
    g.terminals = {"0"};
    for (int r = 0; r < A.r_size; ++r) g.nonterminals.push_back("A" + std::to_string(r));
    g.prods.push_back({A.r_one, {}});
    auto nt = Cfg::nt;
    for (Symbol c : al.ints()) {
        int pc = m.phi_int[static_cast<std::size_t>(al.class_index(c))];
        for (int s = 0; s < A.r_size; ++s) g.prods.push_back({A.mul(pc, s), {0, nt(s)}});
    }
    std::set<std::tuple<int, int, int>> seen;
    for (int p : m.psi)
        for (int x = 0; x < A.r_size; ++x)
            for (int s = 0; s < A.r_size; ++s) {
                int r = A.mul(A.o[static_cast<std::size_t>(p)][static_cast<std::size_t>(x)], s);
                if (seen.emplace(r, x, s).second) g.prods.push_back({r, {0, nt(x), 0, nt(s)}});
            }
    return g;
}

}  // namespace

PieceSets compute_piece_sets(const Analysis& an, int e) {
    const auto& m = an.presentation();
    const auto& A = m.alg;
    const auto& om = an.o_monoid();
    auto R = static_cast<std::size_t>(A.r_size);
    auto O = static_cast<std::size_t>(om.n);
    auto lr = sandwich_table(A);
    // Nodes (phase, g, called): phase 0 expects a piece, phase 1 a call step or the end.
    auto node = [&](int phase, int g, int called) {
        return (static_cast<std::size_t>(phase) * O + static_cast<std::size_t>(g)) * 2 + static_cast<std::size_t>(called);
    };
    std::size_t N = 4 * O;
    std::vector<std::vector<std::size_t>> succ(N), pred(N);
    for (int g = 0; g < om.n; ++g)
        for (int c = 0; c < 2; ++c) {
            std::set<int> targets;
            for (std::size_t r = 0; r < R; ++r)
                for (std::size_t s = 0; s < R; ++s) targets.insert(om.mul(g, lr[r][s]));
            for (int t : targets) succ[node(0, g, c)].push_back(node(1, t, c));
            for (int p : m.psi) succ[node(1, g, c)].push_back(node(0, om.mul(g, p), 1));
        }
    for (std::size_t x = 0; x < N; ++x)
        for (auto y : succ[x]) pred[y].push_back(x);
    auto reach = [&](std::size_t from, const std::vector<std::vector<std::size_t>>& adj) {
        std::vector<char> seen(N, 0);
        std::vector<std::size_t> st = {from};
        seen[from] = 1;
        while (!st.empty()) {
            auto x = st.back();
            st.pop_back();
            for (auto y : adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    st.push_back(y);
                }
        }
        return seen;
    };
    auto fwd = reach(node(0, e, 0), succ);
    auto bwd = reach(node(1, e, 1), pred);
    std::set<int> left, right;
    for (int g = 0; g < om.n; ++g)
        for (int c = 0; c < 2; ++c) {
            if (!fwd[node(0, g, c)]) continue;
            for (std::size_t r = 0; r < R; ++r)
                for (std::size_t s = 0; s < R; ++s)
                    if (bwd[node(1, om.mul(g, lr[r][s]), c)]) {
                        left.insert(static_cast<int>(r));
                        right.insert(static_cast<int>(s));
                    }
        }
    PieceSets ps;
    left.insert(A.r_one);
    right.insert(A.r_one);
    ps.left.assign(left.begin(), left.end());
    ps.right.assign(right.begin(), right.end());
    std::set<int> all(left);
    all.insert(right.begin(), right.end());
    Cfg g = length_cfg(m);
    for (int r : all) {
        g.start = r;
        auto lens = parikh_image(cfg_trim(g), {0}, an.budgets().closure);
        if (lens.components().size() != 1 || !lens.components()[0].periods.empty())
            throw InternalError("piece class " + std::to_string(r) + " does not have a single length");
        long len = lens.components()[0].base[0];
        if (r == A.r_one && len != 0) throw InternalError("class of the empty word has positive length");
        if (len > static_cast<long>(an.budgets().enum_len))
            throw BudgetExceeded("enum", "piece class of length " + std::to_string(len));
        ps.length[r] = len;
        auto& ws = ps.words[r];
        for_each_well_matched_of_length(m.alphabet, static_cast<std::size_t>(len), [&](const Word& w) {
            if (eval_phi(m, w) == r) ws.push_back(w);
            return true;
        });
    }
    return ps;
}

TaggedAlphabet tagged_alphabet(const VpAlphabet& base) {
    TaggedAlphabet t;
    t.base = base;
    std::string tp = "~", bp = "^";
    auto clash = [&](const std::string& pre) {
        for (Symbol s = 0; s < static_cast<Symbol>(base.size()); ++s)
            if (base.find(pre + base.name(s))) return true;
        return false;
    };
    while (clash(tp)) tp += "~";
    while (clash(bp) || bp == tp) bp += "^";
    std::string marker = "#";
    while (base.find(marker) || (marker.rfind(tp, 0) == 0) || (marker.rfind(bp, 0) == 0)) marker += "'";
    std::vector<std::string> ints = base.int_names();
    for (Symbol s = 0; s < static_cast<Symbol>(base.size()); ++s) {
        ints.push_back(tp + base.name(s));
        ints.push_back(bp + base.name(s));
    }
    ints.push_back(marker);
    t.al = VpAlphabet(base.call_names(), ints, base.ret_names());
    t.marker = t.al.id(marker);
    t.origin.assign(t.al.size(), -1);
    for (Symbol s = 0; s < static_cast<Symbol>(base.size()); ++s) {
        t.plain.push_back(t.al.id(base.name(s)));
        t.tilde.push_back(t.al.id(tp + base.name(s)));
        t.bar.push_back(t.al.id(bp + base.name(s)));
        for (Symbol x : {t.plain.back(), t.tilde.back(), t.bar.back()}) t.origin[static_cast<std::size_t>(x)] = s;
    }
    return t;
}

Word tag_context(const TaggedAlphabet& t, const Context& c) {
    auto f = stair_factorize(t.base, c);
    Word u, v;
    auto h = f.height();
    for (std::size_t i = 0; i < h; ++i) {
        for (Symbol s : f.sides[i].u) u.push_back(t.tilde[static_cast<std::size_t>(s)]);
        if (i + 1 < h) u.push_back(t.plain[static_cast<std::size_t>(f.steps[i].first)]);
    }
    for (std::size_t i = h; i-- > 0;) {
        for (Symbol s : f.sides[i].v) v.push_back(t.bar[static_cast<std::size_t>(s)]);
        if (i > 0) v.push_back(t.plain[static_cast<std::size_t>(f.steps[i - 1].second)]);
    }
    return concat(u, v);
}

Context untag_word(const TaggedAlphabet& t, const Word& w) {
    Context c;
    for (Symbol s : w) {
        Symbol o = t.origin[static_cast<std::size_t>(s)];
        if (o < 0) throw InvalidInput("untag: marker in a tagged word");
        bool left = t.tilde[static_cast<std::size_t>(o)] == s || (t.plain[static_cast<std::size_t>(o)] == s && t.al.kind(s) == Kind::Call);
        bool right = t.bar[static_cast<std::size_t>(o)] == s || (t.plain[static_cast<std::size_t>(o)] == s && t.al.kind(s) == Kind::Ret);
        if (left) c.u.push_back(o);
        else if (right) c.v.push_back(o);
        else throw InvalidInput("untag: untagged internal letter");
    }
    return c;
}

Vvpg build_Ge(const Analysis& an, int e, const PieceSets& pieces, const TaggedAlphabet& t) {
    const auto& m = an.presentation();
    const auto& al = m.alphabet;
    const auto& om = an.o_monoid();
    auto lr = sandwich_table(m.alg);
    struct Step {
        int r1, s1, a, b, r2, s2, to;
    };
    // Class-level productions from every reachable nonterminal.
    std::map<int, std::vector<Step>> prods;
    std::vector<int> todo = {e};
    std::set<int> seen = {e};
    while (!todo.empty()) {
        int f = todo.back();
        todo.pop_back();
        auto& out = prods[f];
        for (int r1 : pieces.left)
            for (int s1 : pieces.right) {
                int f1 = om.mul(f, lr[static_cast<std::size_t>(r1)][static_cast<std::size_t>(s1)]);
                for (Symbol a : al.calls())
                    for (Symbol b : al.rets()) {
                        int f2 = om.mul(f1, m.psi[static_cast<std::size_t>(al.pair_index(a, b))]);
                        for (int r2 : pieces.left)
                            for (int s2 : pieces.right) {
                                int g = om.mul(f2, lr[static_cast<std::size_t>(r2)][static_cast<std::size_t>(s2)]);
                                out.push_back({r1, s1, a, b, r2, s2, g});
                                if (seen.insert(g).second) todo.push_back(g);
                            }
                    }
            }
    }
    // Productive: reaches S_e, whose only other rule is the empty one.
    std::set<int> productive = {e};
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [f, steps] : prods) {
            if (productive.count(f)) continue;
            for (const auto& st : steps)
                if (productive.count(st.to)) {
                    productive.insert(f);
                    changed = true;
                    break;
                }
        }
    }
    std::vector<int> order(productive.begin(), productive.end());
    std::map<int, int> nt_of;
    Vvpg g;
    g.alphabet = t.al;
    nt_of[e] = 0;
    g.nonterminals.push_back("S" + std::to_string(e));
    for (int f : order)
        if (f != e) {
            nt_of[f] = static_cast<int>(g.nonterminals.size());
            g.nonterminals.push_back("S" + std::to_string(f));
        }
    g.start = 0;
    auto tag = [&](const Word& w, const std::vector<Symbol>& copy) {
        Word out;
        for (Symbol s : w) out.push_back(copy[static_cast<std::size_t>(s)]);
        return out;
    };
    for (int f : order)
        for (const auto& st : prods[f]) {
            if (!productive.count(st.to)) continue;
            for (const auto& x1 : pieces.words.at(st.r1))
                for (const auto& x2 : pieces.words.at(st.r2))
                    for (const auto& y1 : pieces.words.at(st.s1))
                        for (const auto& y2 : pieces.words.at(st.s2)) {
                            Word u = tag(x1, t.tilde);
                            u.push_back(t.plain[static_cast<std::size_t>(st.a)]);
                            for (Symbol s : tag(x2, t.tilde)) u.push_back(s);
                            Word v = tag(y2, t.bar);
                            v.push_back(t.plain[static_cast<std::size_t>(st.b)]);
                            for (Symbol s : tag(y1, t.bar)) v.push_back(s);
                            g.prods.push_back({nt_of[f], u, nt_of[st.to], v});
                        }
        }
    std::sort(g.prods.begin(), g.prods.end(), [](const VvpgProduction& a, const VvpgProduction& b) {
        return std::tie(a.lhs, a.u, a.rhs, a.v) < std::tie(b.lhs, b.u, b.rhs, b.v);
    });
    g.prods.erase(std::unique(g.prods.begin(), g.prods.end(),
                              [](const VvpgProduction& a, const VvpgProduction& b) {
                                  return std::tie(a.lhs, a.u, a.rhs, a.v) == std::tie(b.lhs, b.u, b.rhs, b.v);
                              }),
                  g.prods.end());
    g.validate();
    return g;
}

KlResult compute_kl(const Analysis& an, int e, const Quad& q) {
    const auto& m = an.presentation();
    check_search(an.budgets(), std::max(q[0] + q[1], q[2] + q[3]));
    auto c1 = find_context(m, q[0], q[1], e, true);
    auto c2 = find_context(m, q[2], q[3], e, true);
    if (!c1 || !c2) throw InternalError("no context at the witness lengths");
    KlResult r;
    r.found = {*c1, *c2, q};
    long d1 = delta_height(m.alphabet, c1->u), d2 = delta_height(m.alphabet, c2->u);
    long g = std::gcd(d1, d2);
    Context n1 = power(*c1, static_cast<std::size_t>(d2 / g)), n2 = power(*c2, static_cast<std::size_t>(d1 / g));
    long k0 = static_cast<long>(n1.u.size()), l0 = static_cast<long>(n1.v.size());
    long k1 = static_cast<long>(n2.u.size()), l1 = static_cast<long>(n2.v.size());
    r.normalized = {n1, n2, {k0, l0, k1, l1}};
    if (l0 == l1) {
        r.formula_case = 1;
        r.k = 3 * k0;
        r.l = 2 * k0 + k1;
    } else if (k0 == k1) {
        r.formula_case = 2;
        r.k = 2 * l0 + l1;
        r.l = 3 * l0;
    } else {
        r.formula_case = 3;
        r.k = 3 * k0 * (2 * l0 + l1);
        r.l = (2 * k0 + k1) * 3 * l0;
    }
    if (r.k == r.l || r.k < 1 || r.l < 1) throw InternalError("length pair is not separating");
    return r;
}

IntermediateCheck verify_intermediate(const Vvpg& g, const Budgets& budgets) {
    Dvpa d = dvpa_trim(nvpa_determinize(vvpg_to_nvpa(g), budgets));
    SyntacticResult s = syntactic_of_dvpa(d, budgets);
    Analysis an(s.m, s.accepting, budgets);
    IntermediateCheck c;
    c.r_size = static_cast<std::size_t>(s.m.alg.r_size);
    c.o_size = s.m.alg.o.size();
    c.weak_ls = decide_weak_ls(an).ok;
    c.ls = decide_ls(an).ok;
    c.quasi_aperiodic = decide_quasi_aperiodic(an).ok;
    return c;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::AC0: return "AC0";
        case Verdict::ModHard: return "MOD_HARD";
        case Verdict::Tc0Hard: return "TC0_HARD";
        case Verdict::Intermediate: return "INTERMEDIATE";
    }
    return "?";
}

ClassificationReport classify_algebra(const SyntacticResult& s, const ClassifyOptions& opt) {
    Analysis an(s.m, s.accepting, opt.budgets);
    const auto& m = an.presentation();
    ClassificationReport rep;
    rep.alphabet = m.alphabet;
    auto& d = rep.diag;
    d.r_size = m.alg.r_size;
    d.o_size = static_cast<int>(m.alg.o.size());
    {
        auto rm = r_monoid(m.alg);
        auto gr = green_relations(rm);
        d.r_j_classes = gr.j_class.empty() ? 0 : *std::max_element(gr.j_class.begin(), gr.j_class.end()) + 1;
        auto go = green_relations(an.o_monoid());
        d.o_j_classes = go.j_class.empty() ? 0 : *std::max_element(go.j_class.begin(), go.j_class.end()) + 1;
        d.solvable = maximal_subgroups_and_solvability(an.o_monoid()).solvable;
    }
    auto wls = decide_weak_ls(an);
    auto ls = decide_ls(an);
    auto qa = decide_quasi_aperiodic(an);
    d.weak_ls = wls.ok;
    d.ls = ls.ok;
    d.quasi_aperiodic = qa.ok;
    if (!d.solvable) rep.note = "unsolvable group in O: NC1-hard";
    if (!wls.ok) {
        rep.verdict = Verdict::Tc0Hard;
        rep.mod_m = 2;
        rep.contexts = wls.contexts;
        d.witness_e = wls.e;
        d.witness_mirrored = wls.mirrored;
        if (rep.note.empty()) rep.note = "MOD_m reduces to L for every m > 1";
        return rep;
    }
    if (!qa.ok) {
        rep.verdict = Verdict::ModHard;
        auto w = mod_m_witness(an, qa);
        rep.mod_m = w.m;
        ContextPair p{w.identity_ctx, w.generator_ctx, {qa.kl[0], qa.kl[1], qa.kl[0], qa.kl[1]}};
        rep.contexts = p;
        d.mod_group = qa.group;
        return rep;
    }
    if (ls.ok) {
        rep.verdict = Verdict::AC0;
        return rep;
    }
    rep.verdict = Verdict::Intermediate;
    d.witness_e = ls.e;
    auto kl = compute_kl(an, ls.e, ls.quad);
    rep.kl = std::make_pair(kl.k, kl.l);
    rep.contexts = kl.found;
    d.kl_case = kl.formula_case;
    d.z = compute_Z(an);
    TaggedAlphabet t = tagged_alphabet(m.alphabet);
    for (int e : d.z) {
        auto pieces = compute_piece_sets(an, e);
        rep.grammars.push_back(build_Ge(an, e, pieces, t));
        d.grammar_e.push_back(e);
        if (opt.verify_grammars) d.grammar_verified.push_back(verify_intermediate(rep.grammars.back(), opt.budgets).intermediate());
    }
    if (rep.grammars.empty()) throw InternalError("intermediate case without grammars");
    return rep;
}

ClassificationReport classify(const Dvpa& a, const ClassifyOptions& opt) {
    a.validate();
    return classify_algebra(syntactic_of_dvpa(a, opt.budgets), opt);
}

}  // namespace vpl
