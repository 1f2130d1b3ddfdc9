#include "vpl/ext_algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace vpl {

Map ExtAlgebra::lambda_map(int r) const {
    Map m(static_cast<std::size_t>(r_size));
    for (int x = 0; x < r_size; ++x) m[static_cast<std::size_t>(x)] = mul(r, x);
    return m;
}

Map ExtAlgebra::rho_map(int r) const {
    Map m(static_cast<std::size_t>(r_size));
    for (int x = 0; x < r_size; ++x) m[static_cast<std::size_t>(x)] = mul(x, r);
    return m;
}

Map ExtAlgebra::compose_maps(const Map& e, const Map& f) {
    Map m(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) m[x] = e[static_cast<std::size_t>(f[x])];
    return m;
}

void ExtAlgebra::index_o() {
    o_index_.clear();
    comp_.clear();
    for (std::size_t i = 0; i < o.size(); ++i) o_index_.emplace(o[i], static_cast<int>(i));
}

int ExtAlgebra::find_o(const Map& m) const {
    auto it = o_index_.find(m);
    return it == o_index_.end() ? -1 : it->second;
}

int ExtAlgebra::compose(int e, int f) const {
    if (!comp_.empty()) return comp_[static_cast<std::size_t>(e) * o.size() + static_cast<std::size_t>(f)];
    int k = find_o(compose_maps(o[static_cast<std::size_t>(e)], o[static_cast<std::size_t>(f)]));
    if (k < 0) throw InternalError("O is not closed under composition");
    return k;
}

int ExtAlgebra::lambda(int r) const {
    int k = find_o(lambda_map(r));
    if (k < 0) throw InternalError("lambda_r missing from O");
    return k;
}

int ExtAlgebra::rho(int r) const {
    int k = find_o(rho_map(r));
    if (k < 0) throw InternalError("rho_r missing from O");
    return k;
}

const std::vector<int>& ExtAlgebra::compose_table() const {
    if (comp_.empty() && !o.empty()) {
        std::vector<int> t(o.size() * o.size());
        for (std::size_t e = 0; e < o.size(); ++e)
            for (std::size_t f = 0; f < o.size(); ++f) {
                int k = find_o(compose_maps(o[e], o[f]));
                if (k < 0) throw InternalError("O is not closed under composition");
                t[e * o.size() + f] = k;
            }
        comp_ = std::move(t);
    }
    return comp_;
}

ImageAlgebra image_closure(LazyAlgebra& a, const Budgets& budgets) {
    const VpAlphabet& al = a.alphabet();
    ImageAlgebra img;
    img.alphabet = al;
    std::unordered_map<int, int> local;
    std::vector<std::vector<int>> rows;
    auto get = [&](int lz, const std::function<Word()>& word) {
        auto it = local.find(lz);
        if (it != local.end()) return it->second;
        int id = static_cast<int>(img.source.size());
        if (img.source.size() >= budgets.closure)
            throw BudgetExceeded("closure", "more than " + std::to_string(budgets.closure) + " algebra elements");
        local.emplace(lz, id);
        img.source.push_back(lz);
        img.words.push_back(word());
        rows.emplace_back();
        return id;
    };
    img.r_one = get(a.one(), [] { return Word{}; });
    for (Symbol c : al.ints()) img.phi_int.push_back(get(a.letter(c), [c] { return Word{c}; }));
    std::size_t np = al.num_pairs();
    img.lifts.assign(np, {});
    for (std::size_t i = 0; i < img.source.size(); ++i) {
        int ei = img.source[i];
        for (std::size_t j = 0; j < i; ++j) {
            int ej = img.source[j];
            int p1 = get(a.mul(ej, ei), [&, i, j] { return concat(img.words[j], img.words[i]); });
            rows[j].push_back(p1);
            int p2 = get(a.mul(ei, ej), [&, i, j] { return concat(img.words[i], img.words[j]); });
            rows[i].push_back(p2);
        }
        int sq = get(a.mul(ei, ei), [&, i] { return concat(img.words[i], img.words[i]); });
        rows[i].push_back(sq);
        for (Symbol c : al.calls())
            for (Symbol b : al.rets()) {
                auto p = static_cast<std::size_t>(al.pair_index(c, b));
                int k = get(a.lift(c, b, ei), [&, i, c, b] {
                    Word w{c};
                    w.insert(w.end(), img.words[i].begin(), img.words[i].end());
                    w.push_back(b);
                    return w;
                });
                img.lifts[p].push_back(k);
            }
    }
    img.r_size = static_cast<int>(img.source.size());
    img.mult.resize(static_cast<std::size_t>(img.r_size) * static_cast<std::size_t>(img.r_size));
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::copy(rows[i].begin(), rows[i].end(), img.mult.begin() + static_cast<long>(i * rows.size()));
    img.accepting.resize(img.source.size());
    for (std::size_t i = 0; i < img.source.size(); ++i) img.accepting[i] = a.accepting(img.source[i]) ? 1 : 0;
    return img;
}

std::vector<int> syntactic_partition(const ImageAlgebra& img) {
    auto n = static_cast<std::size_t>(img.r_size);
    std::vector<int> cls(n);
    for (std::size_t i = 0; i < n; ++i) cls[i] = img.accepting[i] ? 1 : 0;
    std::size_t nclasses = 0;
    while (true) {
        std::map<std::vector<int>, int> sig_index;
        std::vector<int> next(n);
        for (std::size_t x = 0; x < n; ++x) {
            std::vector<int> sig;
            sig.reserve(2 * n + img.lifts.size() + 1);
            sig.push_back(cls[x]);
            for (std::size_t r = 0; r < n; ++r) sig.push_back(cls[static_cast<std::size_t>(img.mult[r * n + x])]);
            for (std::size_t r = 0; r < n; ++r) sig.push_back(cls[static_cast<std::size_t>(img.mult[x * n + r])]);
            for (const auto& l : img.lifts) sig.push_back(cls[static_cast<std::size_t>(l[x])]);
            auto it = sig_index.emplace(std::move(sig), static_cast<int>(sig_index.size())).first;
            next[x] = it->second;
        }
        cls.swap(next);
        if (sig_index.size() == nclasses) break;
        nclasses = sig_index.size();
    }
    return cls;
}

void close_o(MorphismPresentation& m, const Budgets& budgets) {
    ExtAlgebra& A = m.alg;
    std::vector<Map> gens;
    Map id(static_cast<std::size_t>(A.r_size));
    std::iota(id.begin(), id.end(), 0);
    gens.push_back(id);
    for (int r = 0; r < A.r_size; ++r) gens.push_back(A.lambda_map(r));
    for (int r = 0; r < A.r_size; ++r) gens.push_back(A.rho_map(r));
    std::vector<Map> psi_maps;
    for (int p : m.psi) psi_maps.push_back(A.o[static_cast<std::size_t>(p)]);
    for (const auto& pm : psi_maps) gens.push_back(pm);
    std::unordered_map<Map, int, MapHash> idx;
    std::vector<Map> out;
    auto add = [&](Map mm) {
        auto it = idx.find(mm);
        if (it != idx.end()) return it->second;
        if (out.size() >= budgets.closure)
            throw BudgetExceeded("closure", "more than " + std::to_string(budgets.closure) + " operations");
        int k = static_cast<int>(out.size());
        idx.emplace(mm, k);
        out.push_back(std::move(mm));
        return k;
    };
    for (const auto& g : gens) add(g);
    std::vector<Map> uniq_gens;
    for (std::size_t i = 1; i < out.size(); ++i) uniq_gens.push_back(out[i]);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (const auto& g : uniq_gens) add(ExtAlgebra::compose_maps(out[i], g));
    A.o = std::move(out);
    A.o_one = 0;
    A.o_complete = true;
    A.index_o();
    for (std::size_t p = 0; p < m.psi.size(); ++p) m.psi[p] = A.find_o(psi_maps[p]);
}

static std::string word_label(const VpAlphabet& al, const Word& w) {
    if (w.empty()) return "eps";
    std::string s;
    for (Symbol x : w) s += al.name(x);
    return s;
}

SyntacticResult quotient_image(const ImageAlgebra& img, const std::vector<int>& cls0, const Budgets& budgets,
                               bool close) {
    auto n = static_cast<std::size_t>(img.r_size);
    // Canonical class numbering by first member in closure order.
    std::vector<int> renum;
    std::map<int, int> seen;
    std::vector<int> cls(n);
    std::vector<std::size_t> rep;
    for (std::size_t i = 0; i < n; ++i) {
        auto it = seen.find(cls0[i]);
        if (it == seen.end()) {
            it = seen.emplace(cls0[i], static_cast<int>(rep.size())).first;
            rep.push_back(i);
        }
        cls[i] = it->second;
    }
    auto k = rep.size();
    SyntacticResult s;
    MorphismPresentation& m = s.m;
    m.alphabet = img.alphabet;
    ExtAlgebra& A = m.alg;
    A.r_size = static_cast<int>(k);
    A.mult.resize(k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            A.mult[a * k + b] = cls[static_cast<std::size_t>(img.mult[rep[a] * n + rep[b]])];
    A.r_one = cls[static_cast<std::size_t>(img.r_one)];
    for (int p : img.phi_int) m.phi_int.push_back(cls[static_cast<std::size_t>(p)]);
    for (const auto& l : img.lifts) {
        Map mm(k);
        for (std::size_t a = 0; a < k; ++a) mm[a] = cls[static_cast<std::size_t>(l[rep[a]])];
        m.psi.push_back(static_cast<int>(A.o.size()));
        A.o.push_back(mm);
    }
    for (std::size_t a = 0; a < k; ++a) {
        m.r_words.push_back(img.words[rep[a]]);
        A.r_labels.push_back(word_label(img.alphabet, img.words[rep[a]]));
    }
    s.accepting.resize(k);
    for (std::size_t a = 0; a < k; ++a) s.accepting[a] = img.accepting[rep[a]];
    if (close) {
        close_o(m, budgets);
    } else {
        A.index_o();
    }
    int maxsrc = 0;
    for (int x : img.source) maxsrc = std::max(maxsrc, x);
    s.quotient_map.assign(static_cast<std::size_t>(maxsrc) + 1, -1);
    for (std::size_t i = 0; i < n; ++i) s.quotient_map[static_cast<std::size_t>(img.source[i])] = cls[i];
    return s;
}

SyntacticResult syntactic_of(LazyAlgebra& a, const Budgets& budgets) {
    ImageAlgebra img = image_closure(a, budgets);
    return quotient_image(img, syntactic_partition(img), budgets);
}

DvpaAlgebra::DvpaAlgebra(const Dvpa& a) : a_(a), nq_(a.num_states()), ng_(a.num_stack()) {}

int DvpaAlgebra::intern(std::vector<int> f) {
    auto it = index_.find(f);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(elems_.size());
    index_.emplace(f, id);
    elems_.push_back(std::move(f));
    return id;
}

int DvpaAlgebra::one() {
    std::vector<int> f(nq_ * ng_);
    for (std::size_t q = 0; q < nq_; ++q)
        for (std::size_t g = 0; g < ng_; ++g) f[q * ng_ + g] = static_cast<int>(q);
    return intern(std::move(f));
}

int DvpaAlgebra::letter(Symbol c) {
    std::vector<int> f(nq_ * ng_);
    for (std::size_t q = 0; q < nq_; ++q)
        for (std::size_t g = 0; g < ng_; ++g) f[q * ng_ + g] = a_.next(static_cast<int>(q), c, static_cast<int>(g));
    return intern(std::move(f));
}

int DvpaAlgebra::mul(int x, int y) {
    const auto& f = elems_[static_cast<std::size_t>(x)];
    const auto& g = elems_[static_cast<std::size_t>(y)];
    std::vector<int> h(nq_ * ng_);
    for (std::size_t q = 0; q < nq_; ++q)
        for (std::size_t gg = 0; gg < ng_; ++gg)
            h[q * ng_ + gg] = g[static_cast<std::size_t>(f[q * ng_ + gg]) * ng_ + gg];
    return intern(std::move(h));
}

int DvpaAlgebra::lift(Symbol a, Symbol b, int x) {
    const auto& f = elems_[static_cast<std::size_t>(x)];
    std::vector<int> h(nq_ * ng_);
    for (std::size_t q = 0; q < nq_; ++q)
        for (std::size_t g = 0; g < ng_; ++g) {
            int p = a_.next(static_cast<int>(q), a, static_cast<int>(g));
            int beta = a_.pushed(static_cast<int>(q), a, static_cast<int>(g));
            int p2 = f[static_cast<std::size_t>(p) * ng_ + static_cast<std::size_t>(beta)];
            h[q * ng_ + g] = a_.next(p2, b, beta);
        }
    return intern(std::move(h));
}

bool DvpaAlgebra::accepting(int x) {
    int q = elems_[static_cast<std::size_t>(x)][static_cast<std::size_t>(a_.initial) * ng_ + kBottom];
    return a_.is_final(q);
}

Violation validate_ext_algebra(const ExtAlgebra& a) {
    auto n = a.r_size;
    auto fail = [](std::string m) { return Violation{false, std::move(m)}; };
    if (n <= 0) return fail("R is empty");
    if (a.mult.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) return fail("multiplication table is not total");
    for (int v : a.mult)
        if (v < 0 || v >= n) return fail("multiplication value out of range");
    if (a.r_one < 0 || a.r_one >= n) return fail("identity out of range");
    for (int x = 0; x < n; ++x)
        if (a.mul(a.r_one, x) != x || a.mul(x, a.r_one) != x)
            return fail("identity law fails at " + std::to_string(x));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (a.mul(a.mul(x, y), z) != a.mul(x, a.mul(y, z)))
                    return fail("associativity fails at (" + std::to_string(x) + "," + std::to_string(y) + "," +
                                std::to_string(z) + ")");
    std::set<Map> os;
    for (const auto& m : a.o) {
        if (m.size() != static_cast<std::size_t>(n)) return fail("O element has wrong arity");
        for (int v : m)
            if (v < 0 || v >= n) return fail("O element value out of range");
        os.insert(m);
    }
    Map id(static_cast<std::size_t>(n));
    std::iota(id.begin(), id.end(), 0);
    if (!os.count(id)) return fail("O lacks the identity");
    for (int r = 0; r < n; ++r) {
        if (!os.count(a.lambda_map(r))) return fail("O lacks lambda_" + std::to_string(r));
        if (!os.count(a.rho_map(r))) return fail("O lacks rho_" + std::to_string(r));
    }
    for (const auto& e : a.o)
        for (const auto& f : a.o)
            if (!os.count(ExtAlgebra::compose_maps(e, f))) return fail("O is not closed under composition");
    return {};
}

Context StairFactorization::recompose() const {
    Context c;
    std::size_t h = sides.size();
    for (std::size_t i = 0; i < h; ++i) {
        c.u.insert(c.u.end(), sides[i].u.begin(), sides[i].u.end());
        if (i + 1 < h) c.u.push_back(steps[i].first);
    }
    for (std::size_t i = h; i-- > 0;) {
        c.v.insert(c.v.end(), sides[i].v.begin(), sides[i].v.end());
        if (i > 0) c.v.push_back(steps[i - 1].second);
    }
    return c;
}

StairFactorization stair_factorize(const VpAlphabet& al, const Context& ctx) {
    if (!is_well_matched(al, concat(ctx.u, ctx.v))) throw InvalidInput("not a context");
    StairFactorization f;
    // u = x_1 a_1 x_2 ... a_{h-1} x_h: a_i are the calls of u left unmatched in u.
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < ctx.u.size(); ++i) {
        Kind k = al.kind(ctx.u[i]);
        if (k == Kind::Call) open.push_back(i);
        else if (k == Kind::Ret) open.pop_back();
    }
    std::size_t h = open.size() + 1;
    f.sides.resize(h);
    f.steps.resize(h - 1);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < h; ++i) {
        std::size_t end = i + 1 < h ? open[i] : ctx.u.size();
        f.sides[i].u.assign(ctx.u.begin() + static_cast<long>(pos), ctx.u.begin() + static_cast<long>(end));
        if (i + 1 < h) f.steps[i].first = ctx.u[end];
        pos = end + 1;
    }
    // v = y_h b_{h-1} y_{h-1} ... b_1 y_1: b_i are the returns of v unmatched in v.
    std::vector<std::size_t> closing;
    long depth = 0;
    for (std::size_t i = 0; i < ctx.v.size(); ++i) {
        Kind k = al.kind(ctx.v[i]);
        if (k == Kind::Call) ++depth;
        else if (k == Kind::Ret) {
            if (depth == 0) closing.push_back(i);
            else --depth;
        }
    }
    pos = 0;
    for (std::size_t j = 0; j < h; ++j) {
        std::size_t i = h - 1 - j;  // side index
        std::size_t end = j < closing.size() ? closing[j] : ctx.v.size();
        f.sides[i].v.assign(ctx.v.begin() + static_cast<long>(pos), ctx.v.begin() + static_cast<long>(end));
        if (j < closing.size()) f.steps[i - 1].second = ctx.v[end];
        pos = end + 1;
    }
    return f;
}

int eval_phi(const MorphismPresentation& m, const Word& w) {
    const auto& al = m.alphabet;
    const auto& A = m.alg;
    std::vector<std::pair<int, Symbol>> st;
    int cur = A.r_one;
    for (Symbol s : w) {
        switch (al.kind(s)) {
            case Kind::Int: cur = A.mul(cur, m.phi_int[static_cast<std::size_t>(al.class_index(s))]); break;
            case Kind::Call:
                st.push_back({cur, s});
                cur = A.r_one;
                break;
            case Kind::Ret: {
                if (st.empty()) throw InvalidInput("eval_phi: word is not well-matched");
                auto [prev, a] = st.back();
                st.pop_back();
                const Map& e = A.o[static_cast<std::size_t>(m.psi[static_cast<std::size_t>(al.pair_index(a, s))])];
                cur = A.mul(prev, e[static_cast<std::size_t>(cur)]);
                break;
            }
        }
    }
    if (!st.empty()) throw InvalidInput("eval_phi: word is not well-matched");
    return cur;
}

Map eval_psi_map(const MorphismPresentation& m, const Context& ctx) {
    const auto& al = m.alphabet;
    const auto& A = m.alg;
    auto f = stair_factorize(al, ctx);
    std::size_t h = f.height();
    std::vector<int> px(h), py(h);
    for (std::size_t i = 0; i < h; ++i) {
        px[i] = eval_phi(m, f.sides[i].u);
        py[i] = eval_phi(m, f.sides[i].v);
    }
    Map out(static_cast<std::size_t>(A.r_size));
    for (int r = 0; r < A.r_size; ++r) {
        int val = r;
        for (std::size_t i = h; i-- > 0;) {
            val = A.mul(A.mul(px[i], val), py[i]);
            if (i > 0) {
                auto [a, b] = f.steps[i - 1];
                val = A.o[static_cast<std::size_t>(m.psi[static_cast<std::size_t>(al.pair_index(a, b))])][static_cast<std::size_t>(val)];
            }
        }
        out[static_cast<std::size_t>(r)] = val;
    }
    return out;
}

int eval_psi(const MorphismPresentation& m, const Context& ctx) {
    int k = m.alg.find_o(eval_psi_map(m, ctx));
    if (k < 0) throw InternalError("psi image missing from O (O not closed?)");
    return k;
}

static Recognizer recognizer_from_image(const ImageAlgebra& img, bool with_o, const Budgets& budgets) {
    Recognizer r;
    auto& m = r.m;
    m.alphabet = img.alphabet;
    m.alg.r_size = img.r_size;
    m.alg.mult = img.mult;
    m.alg.r_one = img.r_one;
    m.phi_int = img.phi_int;
    m.r_words = img.words;
    for (const auto& w : img.words) m.alg.r_labels.push_back(word_label(img.alphabet, w));
    Map id(static_cast<std::size_t>(img.r_size));
    std::iota(id.begin(), id.end(), 0);
    m.alg.o.push_back(id);
    for (const auto& l : img.lifts) {
        m.psi.push_back(static_cast<int>(m.alg.o.size()));
        m.alg.o.push_back(l);
    }
    m.alg.index_o();
    if (with_o) close_o(m, budgets);
    r.accepting = img.accepting;
    return r;
}

Recognizer dvpa_to_ext(const Dvpa& a, const Budgets& budgets, bool with_o) {
    a.validate();
    DvpaAlgebra alg(a);
    return recognizer_from_image(image_closure(alg, budgets), with_o, budgets);
}

Dvpa ext_to_dvpa(const MorphismPresentation& m, const std::vector<char>& accepting) {
    const auto& al = m.alphabet;
    const auto& A = m.alg;
    std::vector<std::string> qn, gn;
    for (int r = 0; r < A.r_size; ++r)
        qn.push_back(A.r_labels.empty() ? "r" + std::to_string(r) : A.r_labels[static_cast<std::size_t>(r)]);
    auto nc = static_cast<int>(al.num_calls());
    for (int r = 0; r < A.r_size; ++r)
        for (Symbol c : al.calls()) gn.push_back("(" + qn[static_cast<std::size_t>(r)] + "," + al.name(c) + ")");
    Dvpa d(al, qn, gn);
    d.initial = A.r_one;
    for (int r = 0; r < A.r_size; ++r) d.finals[static_cast<std::size_t>(r)] = accepting[static_cast<std::size_t>(r)];
    for (int r = 0; r < A.r_size; ++r)
        for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s)
            for (int g = 0; g < static_cast<int>(d.num_stack()); ++g) {
                switch (al.kind(s)) {
                    case Kind::Int:
                        d.set(r, s, g, A.mul(r, m.phi_int[static_cast<std::size_t>(al.class_index(s))]));
                        break;
                    case Kind::Call: d.set(r, s, g, A.r_one, 1 + r * nc + al.class_index(s)); break;
                    case Kind::Ret:
                        if (g == kBottom) {
                            d.set(r, s, g, r);
                        } else {
                            int r2 = (g - 1) / nc;
                            Symbol a = al.calls()[static_cast<std::size_t>((g - 1) % nc)];
                            const Map& e = A.o[static_cast<std::size_t>(m.psi[static_cast<std::size_t>(al.pair_index(a, s))])];
                            d.set(r, s, g, A.mul(r2, e[static_cast<std::size_t>(r)]));
                        }
                        break;
                }
            }
    return d;
}

SyntacticResult syntactic_quotient(const Recognizer& r, const Budgets& budgets) {
    MaterializedAlgebra la(r.m, r.accepting);
    return syntactic_of(la, budgets);
}

SyntacticResult syntactic_of_dvpa(const Dvpa& a, const Budgets& budgets) {
    a.validate();
    DvpaAlgebra alg(a);
    return syntactic_of(alg, budgets);
}

bool recognizer_accepts(const Recognizer& r, const Word& w) {
    if (!is_well_matched(r.m.alphabet, w)) return false;
    return r.accepting[static_cast<std::size_t>(eval_phi(r.m, w))] != 0;
}

FiniteMonoid r_monoid(const ExtAlgebra& a) {
    FiniteMonoid m;
    m.n = a.r_size;
    m.table = a.mult;
    m.one = a.r_one;
    return m;
}

FiniteMonoid o_monoid(const ExtAlgebra& a) {
    FiniteMonoid m;
    m.n = static_cast<int>(a.o.size());
    m.table = a.compose_table();
    m.one = a.o_one;
    return m;
}

bool is_idempotent(const FiniteMonoid& m, int x) { return m.mul(x, x) == x; }

int idempotent_power(const FiniteMonoid& m) {
    long lcm = 1, max_index = 1;
    for (int x = 0; x < m.n; ++x) {
        // powers x^1, x^2, ... until repetition
        std::map<int, int> pos;
        int y = x, k = 1;
        while (!pos.count(y)) {
            pos[y] = k;
            y = m.mul(y, x);
            ++k;
        }
        long index = pos[y];
        long period = k - index;
        lcm = std::lcm(lcm, period);
        max_index = std::max(max_index, index);
    }
    long w = lcm;
    while (w < max_index) w += lcm;
    return static_cast<int>(w);
}

FReachable f_reachable(const ExtAlgebra& a, const std::vector<char>& accepting) {
    FReachable fr;
    auto n = static_cast<std::size_t>(a.r_size);
    fr.r.assign(n, 0);
    for (const auto& e : a.o)
        for (std::size_t r = 0; r < n; ++r)
            if (accepting[static_cast<std::size_t>(e[r])]) fr.r[r] = 1;
    fr.o.assign(a.o.size(), 0);
    for (std::size_t i = 0; i < a.o.size(); ++i)
        for (std::size_t r = 0; r < n; ++r)
            if (fr.r[static_cast<std::size_t>(a.o[i][r])]) {
                fr.o[i] = 1;
                break;
            }
    return fr;
}

namespace {

// Iterative Tarjan SCC over an implicit graph; components numbered in reverse
// topological order (sinks first).
std::vector<int> scc(int n, const std::function<void(int, std::vector<int>&)>& succ, int* count) {
    std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n)), comp(static_cast<std::size_t>(n), -1);
    std::vector<char> on(static_cast<std::size_t>(n), 0);
    std::vector<int> st;
    int idx = 0, c = 0;
    struct Frame {
        int v;
        std::vector<int> out;
        std::size_t i;
    };
    for (int root = 0; root < n; ++root) {
        if (index[static_cast<std::size_t>(root)] >= 0) continue;
        std::vector<Frame> call;
        auto push = [&](int v) {
            index[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = idx++;
            st.push_back(v);
            on[static_cast<std::size_t>(v)] = 1;
            Frame f{v, {}, 0};
            succ(v, f.out);
            call.push_back(std::move(f));
        };
        push(root);
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.i < f.out.size()) {
                int w = f.out[f.i++];
                if (index[static_cast<std::size_t>(w)] < 0) push(w);
                else if (on[static_cast<std::size_t>(w)])
                    low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], index[static_cast<std::size_t>(w)]);
            } else {
                int v = f.v;
                if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
                    while (true) {
                        int w = st.back();
                        st.pop_back();
                        on[static_cast<std::size_t>(w)] = 0;
                        comp[static_cast<std::size_t>(w)] = c;
                        if (w == v) break;
                    }
                    ++c;
                }
                call.pop_back();
                if (!call.empty())
                    low[static_cast<std::size_t>(call.back().v)] = std::min(low[static_cast<std::size_t>(call.back().v)], low[static_cast<std::size_t>(v)]);
            }
        }
    }
    if (count) *count = c;
    return comp;
}

}  // namespace

GreenRelations green_relations(const FiniteMonoid& m) {
    int n = m.n;
    std::vector<int> gens = m.gens;
    if (gens.empty())
        for (int i = 0; i < n; ++i) gens.push_back(i);
    GreenRelations g;
    int cr = 0, cl = 0, cj = 0;
    g.r_class = scc(n, [&](int x, std::vector<int>& out) { for (int y : gens) out.push_back(m.mul(x, y)); }, &cr);
    g.l_class = scc(n, [&](int x, std::vector<int>& out) { for (int y : gens) out.push_back(m.mul(y, x)); }, &cl);
    auto jsucc = [&](int x, std::vector<int>& out) {
        for (int y : gens) {
            out.push_back(m.mul(x, y));
            out.push_back(m.mul(y, x));
        }
    };
    g.j_class = scc(n, jsucc, &cj);
    std::map<std::pair<int, int>, int> hid;
    g.h_class.resize(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        auto key = std::make_pair(g.r_class[static_cast<std::size_t>(x)], g.l_class[static_cast<std::size_t>(x)]);
        auto it = hid.emplace(key, static_cast<int>(hid.size())).first;
        g.h_class[static_cast<std::size_t>(x)] = it->second;
    }
    // Reachability on the J-condensation; components are numbered sinks first.
    std::vector<std::vector<char>> creach(static_cast<std::size_t>(cj), std::vector<char>(static_cast<std::size_t>(cj), 0));
    std::vector<std::vector<int>> members(static_cast<std::size_t>(cj));
    for (int x = 0; x < n; ++x) members[static_cast<std::size_t>(g.j_class[static_cast<std::size_t>(x)])].push_back(x);
    std::vector<int> out;
    for (int c = 0; c < cj; ++c) {
        auto& row = creach[static_cast<std::size_t>(c)];
        row[static_cast<std::size_t>(c)] = 1;
        for (int x : members[static_cast<std::size_t>(c)]) {
            out.clear();
            jsucc(x, out);
            for (int y : out) {
                int d = g.j_class[static_cast<std::size_t>(y)];
                if (d == c || row[static_cast<std::size_t>(d)]) continue;
                const auto& sub = creach[static_cast<std::size_t>(d)];
                for (int k = 0; k < cj; ++k)
                    if (sub[static_cast<std::size_t>(k)]) row[static_cast<std::size_t>(k)] = 1;
            }
        }
    }
    g.leq_j.assign(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            g.leq_j[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
                creach[static_cast<std::size_t>(g.j_class[static_cast<std::size_t>(y)])][static_cast<std::size_t>(g.j_class[static_cast<std::size_t>(x)])];
    return g;
}

bool group_is_solvable(const FiniteMonoid& m, const std::vector<int>& group, int e) {
    std::vector<int> G = group;
    while (G.size() > 1) {
        std::set<int> gs(G.begin(), G.end());
        auto inv = [&](int x) {
            for (int y : G)
                if (m.mul(x, y) == e) return y;
            throw InternalError("group element without inverse");
        };
        std::set<int> H = {e};
        for (int x : G)
            for (int y : G) H.insert(m.mul(m.mul(inv(x), inv(y)), m.mul(x, y)));
        // Close under multiplication.
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<int> hv(H.begin(), H.end());
            for (int x : hv)
                for (int y : hv)
                    if (H.insert(m.mul(x, y)).second) grew = true;
        }
        if (H.size() == G.size()) return false;
        G.assign(H.begin(), H.end());
    }
    return true;
}

SubgroupReport maximal_subgroups_and_solvability(const FiniteMonoid& m) {
    SubgroupReport rep;
    auto g = green_relations(m);
    for (int e = 0; e < m.n; ++e) {
        if (!is_idempotent(m, e)) continue;
        GroupInfo gi;
        gi.idempotent = e;
        for (int x = 0; x < m.n; ++x)
            if (g.h_class[static_cast<std::size_t>(x)] == g.h_class[static_cast<std::size_t>(e)]) gi.elements.push_back(x);
        gi.solvable = group_is_solvable(m, gi.elements, e);
        rep.solvable = rep.solvable && gi.solvable;
        rep.groups.push_back(std::move(gi));
    }
    return rep;
}

int nesting_depth(const VpAlphabet& al, const Word& w) {
    if (!is_well_matched(al, w)) throw InvalidInput("nesting_depth: word is not well-matched");
    struct Level {
        int max = 0;
        int count = 0;
        void add(int d) {
            if (d > max) {
                max = d;
                count = 1;
            } else if (d == max) {
                ++count;
            }
        }
    };
    std::vector<Level> st(1);
    for (Symbol s : w) {
        switch (al.kind(s)) {
            case Kind::Int: st.back().add(0); break;
            case Kind::Call: st.emplace_back(); break;
            case Kind::Ret: {
                Level in = st.back();
                st.pop_back();
                int d = in.max;
                st.back().add(d == 0 || in.count >= 2 ? d + 1 : d);
                break;
            }
        }
    }
    return st.back().max;
}

MorphismPresentation mirror_presentation(const MorphismPresentation& m) {
    const auto& al = m.alphabet;
    MorphismPresentation r;
    r.alphabet = VpAlphabet(al.ret_names(), al.int_names(), al.call_names());
    r.alg = m.alg;
    auto n = static_cast<std::size_t>(m.alg.r_size);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) r.alg.mult[x * n + y] = m.alg.mult[y * n + x];
    r.alg.index_o();
    r.phi_int = m.phi_int;
    r.psi.assign(m.psi.size(), 0);
    for (Symbol a : al.calls())
        for (Symbol b : al.rets()) {
            Symbol na = r.alphabet.id(al.name(a)), nb = r.alphabet.id(al.name(b));
            r.psi[static_cast<std::size_t>(r.alphabet.pair_index(nb, na))] = m.psi[static_cast<std::size_t>(al.pair_index(a, b))];
        }
    for (const auto& w : m.r_words) r.r_words.push_back(mirror_word(r.alphabet, al, w));
    return r;
}

Word mirror_word(const VpAlphabet& target, const VpAlphabet& source, const Word& w) {
    Word out;
    for (std::size_t i = w.size(); i-- > 0;) out.push_back(target.id(source.name(w[i])));
    return out;
}

}  // namespace vpl
