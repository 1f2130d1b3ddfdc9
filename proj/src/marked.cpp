#include "vpl/marked.hpp"

#include <algorithm>
#include <numeric>

#include "vpl/parikh.hpp"

namespace vpl {

std::string fresh_name(const VpAlphabet& al, std::string name) {
    while (al.find(name)) name += "'";
    return name;
}

Word MarkedAlphabet::barred_reverse(const Word& w) const {
    Word out;
    for (std::size_t i = w.size(); i-- > 0;) out.push_back(bar[static_cast<std::size_t>(w[i])]);
    return out;
}

Word MarkedAlphabet::lift(const Word& w) const {
    Word out;
    for (Symbol s : w) out.push_back(plain[static_cast<std::size_t>(s)]);
    return out;
}

namespace {

MarkedAlphabet build_marked(const VpAlphabet& base, bool barred) {
    MarkedAlphabet ma;
    ma.base = base;
    ma.barred = barred;
    std::string prefix = "^";
    if (barred) {
        auto clash = [&] {
            for (Symbol s = 0; s < static_cast<Symbol>(base.size()); ++s)
                if (base.find(prefix + base.name(s))) return true;
            return false;
        };
        while (clash()) prefix += "^";
    }
    ma.bar_prefix = prefix;
    std::vector<std::string> calls = base.call_names(), ints = base.int_names(), rets = base.ret_names();
    std::string marker = "#";
    auto taken = [&](const std::string& n) {
        if (base.find(n)) return true;
        return barred && n.rfind(prefix, 0) == 0 && base.find(n.substr(prefix.size()));
    };
    while (taken(marker)) marker += "'";
    if (barred) {
        for (const auto& b : base.ret_names()) calls.push_back(prefix + b);
        for (const auto& c : base.int_names()) ints.push_back(prefix + c);
        for (const auto& a : base.call_names()) rets.push_back(prefix + a);
    }
    ints.push_back(marker);
    ma.al = VpAlphabet(calls, ints, rets);
    ma.marker = ma.al.id(marker);
    ma.origin.assign(ma.al.size(), -1);
    ma.is_bar.assign(ma.al.size(), 0);
    for (Symbol s = 0; s < static_cast<Symbol>(base.size()); ++s) {
        Symbol p = ma.al.id(base.name(s));
        ma.plain.push_back(p);
        ma.origin[static_cast<std::size_t>(p)] = s;
        if (barred) {
            Symbol q = ma.al.id(prefix + base.name(s));
            ma.bar.push_back(q);
            ma.origin[static_cast<std::size_t>(q)] = s;
            ma.is_bar[static_cast<std::size_t>(q)] = 1;
        }
    }
    return ma;
}

int image_eval(const ImageAlgebra& img, const Word& w) {
    const auto& al = img.alphabet;
    auto n = static_cast<std::size_t>(img.r_size);
    std::vector<std::pair<int, Symbol>> st;
    int cur = img.r_one;
    for (Symbol s : w) {
        switch (al.kind(s)) {
            case Kind::Int:
                cur = img.mult[static_cast<std::size_t>(cur) * n + static_cast<std::size_t>(img.phi_int[static_cast<std::size_t>(al.class_index(s))])];
                break;
            case Kind::Call:
                st.push_back({cur, s});
                cur = img.r_one;
                break;
            case Kind::Ret: {
                if (st.empty()) throw InvalidInput("word is not well-matched");
                auto [prev, a] = st.back();
                st.pop_back();
                int x = img.lifts[static_cast<std::size_t>(al.pair_index(a, s))][static_cast<std::size_t>(cur)];
                cur = img.mult[static_cast<std::size_t>(prev) * n + static_cast<std::size_t>(x)];
                break;
            }
        }
    }
    if (!st.empty()) throw InvalidInput("word is not well-matched");
    return cur;
}

}  // namespace

MarkedAlphabet marked_alphabet(const VpAlphabet& base) { return build_marked(base, false); }
MarkedAlphabet barred_alphabet(const VpAlphabet& base) { return build_marked(base, true); }

Dvpa height_positive_dvpa(const VpAlphabet& al, Symbol marker) {
    enum { PRE, POST, DEAD };
    Dvpa d(al, {"pre", "post", "dead"}, {kBottomName, "X"});
    for (int q = 0; q < 3; ++q)
        for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s)
            for (int g = 0; g < 2; ++g) {
                int to = q;
                if (s == marker) to = (q == PRE && g != kBottom) ? POST : DEAD;
                d.set(q, s, g, to, al.kind(s) == Kind::Call ? 1 : -1);
            }
    d.finals[POST] = 1;
    d.validate();
    return d;
}

LeAlgebra::LeAlgebra(const MorphismPresentation& m, const MarkedAlphabet& ma)
    : m_(m), ma_(ma), bot_(m.alg.r_size + static_cast<int>(m.alg.o.size())) {
    if (!m.alg.o_complete) throw InvalidInput("marked algebra needs a closed O");
}

int LeAlgebra::letter(Symbol c) {
    if (c == ma_.marker) return m_.alg.r_size + m_.alg.o_one;
    Symbol b = ma_.origin[static_cast<std::size_t>(c)];
    return m_.phi_int[static_cast<std::size_t>(m_.alphabet.class_index(b))];
}

int LeAlgebra::mul(int x, int y) {
    const auto& A = m_.alg;
    int R = A.r_size;
    if (x == bot_ || y == bot_) return bot_;
    if (x < R && y < R) return A.mul(x, y);
    if (x < R) return R + A.compose(A.lambda(x), y - R);
    if (y < R) return R + A.compose(A.rho(y), x - R);
    return bot_;
}

int LeAlgebra::lift(Symbol a, Symbol b, int x) {
    const auto& A = m_.alg;
    int R = A.r_size;
    if (x == bot_) return bot_;
    Symbol a0 = ma_.origin[static_cast<std::size_t>(a)], b0 = ma_.origin[static_cast<std::size_t>(b)];
    int p = m_.psi[static_cast<std::size_t>(m_.alphabet.pair_index(a0, b0))];
    if (x < R) return A.o[static_cast<std::size_t>(p)][static_cast<std::size_t>(x)];
    return R + A.compose(p, x - R);
}

std::string LeAlgebra::label(int x) {
    if (x == bot_) return "bot";
    if (x < m_.alg.r_size) return m_.alg.r_labels.empty() ? std::to_string(x) : m_.alg.r_labels[static_cast<std::size_t>(x)];
    return "o" + std::to_string(x - m_.alg.r_size);
}

KeAlgebra::KeAlgebra(const MorphismPresentation& m, const MarkedAlphabet& ma, const Budgets& budgets)
    : m_(m), ma_(ma), budgets_(budgets) {
    if (!m.alg.o_complete) throw InvalidInput("marked algebra needs a closed O");
    one_ = intern({Tag::One, 0});
    bot_ = intern({Tag::Bot, 0});
    for (int r = 0; r < m.alg.r_size; ++r) {
        lambda_.push_back(m.alg.lambda(r));
        rho_.push_back(m.alg.rho(r));
    }
}

int KeAlgebra::intern(Elem e) {
    auto it = index_.find(e);
    if (it != index_.end()) return it->second;
    if (elems_.size() >= budgets_.closure)
        throw BudgetExceeded("closure", "more than " + std::to_string(budgets_.closure) + " marked elements");
    int id = static_cast<int>(elems_.size());
    elems_.push_back(e);
    index_.emplace(e, id);
    return id;
}

int KeAlgebra::intern_set(PairSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto it = set_index_.find(s);
    int sid;
    if (it != set_index_.end()) {
        sid = it->second;
    } else {
        sid = static_cast<int>(sets_.size());
        sets_.push_back(s);
        set_index_.emplace(std::move(s), sid);
    }
    return intern({Tag::Set, sid});
}

bool KeAlgebra::contains_pair(int x, int e1, int e2) const {
    const Elem& el = elem(x);
    if (el.tag != Tag::Set) return false;
    const auto& s = pairs(el.val);
    return std::binary_search(s.begin(), s.end(), std::make_pair(e1, e2));
}

int KeAlgebra::letter(Symbol c) {
    if (c == ma_.marker) {
        PairSet s;
        for (int r : rho_) s.push_back({r, r});
        return intern_set(std::move(s));
    }
    Symbol b = ma_.origin[static_cast<std::size_t>(c)];
    int r = m_.phi_int[static_cast<std::size_t>(m_.alphabet.class_index(b))];
    return intern({ma_.is_bar[static_cast<std::size_t>(c)] ? Tag::Bar : Tag::R, r});
}

int KeAlgebra::mul(int x, int y) {
    if (x == one_) return y;
    if (y == one_) return x;
    Elem a = elem(x), b = elem(y);
    const auto& A = m_.alg;
    if (a.tag == Tag::Bot || b.tag == Tag::Bot) return bot_;
    if (a.tag == Tag::R && b.tag == Tag::R) return intern({Tag::R, A.mul(a.val, b.val)});
    if (a.tag == Tag::Bar && b.tag == Tag::Bar) return intern({Tag::Bar, A.mul(b.val, a.val)});
    if (a.tag == Tag::R && b.tag == Tag::Set) {
        PairSet s;
        for (auto [e1, e2] : pairs(b.val)) s.push_back({A.compose(lambda_[static_cast<std::size_t>(a.val)], e1), e2});
        return intern_set(std::move(s));
    }
    if (a.tag == Tag::Set && b.tag == Tag::Bar) {
        PairSet s;
        for (auto [e1, e2] : pairs(a.val)) s.push_back({e1, A.compose(lambda_[static_cast<std::size_t>(b.val)], e2)});
        return intern_set(std::move(s));
    }
    return bot_;
}

int KeAlgebra::lift(Symbol a, Symbol b, int x) {
    const auto& A = m_.alg;
    const auto& al = m_.alphabet;
    bool abar = ma_.is_bar[static_cast<std::size_t>(a)], bbar = ma_.is_bar[static_cast<std::size_t>(b)];
    Symbol a0 = ma_.origin[static_cast<std::size_t>(a)], b0 = ma_.origin[static_cast<std::size_t>(b)];
    Elem el = elem(x);
    auto apply = [&](Symbol call, Symbol ret, int r) {
        return A.o[static_cast<std::size_t>(m_.psi[static_cast<std::size_t>(al.pair_index(call, ret))])][static_cast<std::size_t>(r)];
    };
    if (!abar && !bbar) {
        if (el.tag == Tag::One) return intern({Tag::R, apply(a0, b0, A.r_one)});
        if (el.tag == Tag::R) return intern({Tag::R, apply(a0, b0, el.val)});
        return bot_;
    }
    if (abar && bbar) {
        // a is the bar of a return b', b the bar of a call a'.
        if (el.tag == Tag::One) return intern({Tag::Bar, apply(b0, a0, A.r_one)});
        if (el.tag == Tag::Bar) return intern({Tag::Bar, apply(b0, a0, el.val)});
        return bot_;
    }
    if (!abar && bbar && el.tag == Tag::Set) {
        PairSet s;
        for (auto [e1, e2] : pairs(el.val))
            for (Symbol ret : al.rets()) {
                int p1 = m_.psi[static_cast<std::size_t>(al.pair_index(a0, ret))];
                int p2 = m_.psi[static_cast<std::size_t>(al.pair_index(b0, ret))];
                int f1 = A.compose(p1, e1), f2 = A.compose(p2, e2);
                for (int r : rho_) s.push_back({A.compose(r, f1), A.compose(r, f2)});
            }
        return intern_set(std::move(s));
    }
    return bot_;
}

std::string KeAlgebra::label(int x) {
    const Elem& e = elem(x);
    switch (e.tag) {
        case Tag::One: return "1";
        case Tag::Bot: return "bot";
        case Tag::R: return "r" + std::to_string(e.val);
        case Tag::Bar: return "^r" + std::to_string(e.val);
        case Tag::Set: break;
    }
    std::string s = "{";
    for (auto [a, b] : pairs(e.val)) s += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    return s + "}";
}

int HpAlgebra::mul(int x, int y) {
    if (x == Bot || y == Bot) return Bot;
    if (x == N) return y;
    if (y == N) return x;
    return Bot;
}

int ProductAlgebra::intern(int x, int y) {
    auto key = std::make_pair(x, y);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(pairs_.size());
    pairs_.push_back(key);
    index_.emplace(key, id);
    return id;
}

int ProductAlgebra::mul(int x, int y) {
    auto [x1, x2] = parts(x);
    auto [y1, y2] = parts(y);
    return intern(a_.mul(x1, y1), b_.mul(x2, y2));
}

int ProductAlgebra::lift(Symbol a, Symbol b, int x) {
    auto [x1, x2] = parts(x);
    return intern(a_.lift(a, b, x1), b_.lift(a, b, x2));
}

bool ProductAlgebra::accepting(int x) {
    auto [x1, x2] = parts(x);
    return a_.accepting(x1) && b_.accepting(x2);
}

std::string ProductAlgebra::label(int x) {
    auto [x1, x2] = parts(x);
    return "(" + a_.label(x1) + "," + b_.label(x2) + ")";
}

void MarkedFamily::close(LazyAlgebra& marked, const Budgets& budgets) {
    budgets_ = budgets;
    HpAlgebra hp(ma_.al, ma_.marker);
    ProductAlgebra prod(marked, hp);
    img_ = image_closure(prod, budgets);
    for (int s : img_.source) parts_.push_back(prod.parts(s));
}

std::vector<char> MarkedFamily::select(const Pred& acc) const {
    std::vector<char> out(parts_.size());
    for (std::size_t i = 0; i < parts_.size(); ++i) out[i] = acc(parts_[i].first, parts_[i].second) ? 1 : 0;
    return out;
}

SyntacticResult MarkedFamily::recognizer(const Pred& acc) const {
    ImageAlgebra img = img_;
    img.accepting = select(acc);
    return quotient_image(img, syntactic_partition(img), budgets_, false);
}

SemilinearSet MarkedFamily::parikh(const Pred& acc) const {
    auto sel = select(acc);
    if (std::find(sel.begin(), sel.end(), 1) == sel.end()) return SemilinearSet::empty(2);
    if (auto it = parikh_cache_.find(sel); it != parikh_cache_.end()) return it->second;
    ImageAlgebra img = img_;
    img.accepting = sel;
    SyntacticResult s = quotient_image(img, syntactic_partition(img), budgets_, false);
    auto p = parikh_of_recognizer(s.m, s.accepting, ma_.marker);
    parikh_cache_.emplace(std::move(sel), p);
    return p;
}

bool MarkedFamily::empty(const Pred& acc) const {
    auto sel = select(acc);
    return std::find(sel.begin(), sel.end(), 1) == sel.end();
}

LeFamily::LeFamily(const MorphismPresentation& m, const Budgets& budgets)
    : m_(&m), r_size_(m.alg.r_size), bot_(m.alg.r_size + static_cast<int>(m.alg.o.size())) {
    ma_ = marked_alphabet(m.alphabet);
    LeAlgebra le(m, ma_);
    close(le, budgets);
}

MarkedFamily::Pred LeFamily::le_pred(int e, bool up) const {
    int target = r_size_ + e;
    return [target, up](int x, int h) { return x == target && (!up || h == HpAlgebra::P); };
}

MarkedFamily::Pred LeFamily::me_pred(int e) const {
    const auto* m = m_;
    int R = r_size_, bot = bot_;
    return [m, R, bot, e](int x, int h) {
        if (h != HpAlgebra::P || x < R || x == bot) return false;
        return m->alg.compose(e, x - R) == e;
    };
}

SyntacticResult LeFamily::build_Le(int e, bool up) const { return recognizer(le_pred(e, up)); }
SemilinearSet LeFamily::parikh_Le(int e, bool up) const { return parikh(le_pred(e, up)); }
SyntacticResult LeFamily::build_Me(int e) const { return recognizer(me_pred(e)); }
SemilinearSet LeFamily::parikh_Me(int e) const { return parikh(me_pred(e)); }

int LeFamily::eval(const Word& w) const {
    return parts_[static_cast<std::size_t>(image_eval(img_, w))].first;
}

KeFamily::KeFamily(const MorphismPresentation& m, const Budgets& budgets) : m_(&m) {
    ma_ = barred_alphabet(m.alphabet);
    ke_ = std::make_unique<KeAlgebra>(m, ma_, budgets);
    close(*ke_, budgets);
    for (const auto& [x, h] : parts_) {
        const auto& el = ke_->elem(x);
        set_of_.push_back(el.tag == KeAlgebra::Tag::Set ? el.val : -1);
    }
}

MarkedFamily::Pred KeFamily::ke_pred(int e, bool up) const {
    const KeAlgebra* ke = ke_.get();
    return [ke, e, up](int x, int h) { return (!up || h == HpAlgebra::P) && ke->contains_pair(x, e, e); };
}

SyntacticResult KeFamily::build_Ke(int e, bool up) const { return recognizer(ke_pred(e, up)); }
SemilinearSet KeFamily::parikh_Ke(int e, bool up) const { return parikh(ke_pred(e, up)); }

KeAlgebra::PairSet KeFamily::pairs_of(const Word& w) const {
    int s = set_of_[static_cast<std::size_t>(image_eval(img_, w))];
    return s < 0 ? KeAlgebra::PairSet{} : ke_->pairs(s);
}

Dvpa build_Le_dvpa(const MorphismPresentation& m, int e, const Budgets& budgets) {
    LeFamily f(m, budgets);
    auto s = f.build_Le(e, false);
    return ext_to_dvpa(s.m, s.accepting);
}

Dvpa build_Le_up(const MorphismPresentation& m, int e, const Budgets& budgets) {
    LeFamily f(m, budgets);
    auto s = f.build_Le(e, false);
    return dvpa_intersect(ext_to_dvpa(s.m, s.accepting), height_positive_dvpa(f.alphabet().al, f.alphabet().marker));
}

Dvpa build_Ke_up(const MorphismPresentation& m, int e, const Budgets& budgets) {
    KeFamily f(m, budgets);
    auto s = f.build_Ke(e, false);
    return dvpa_intersect(ext_to_dvpa(s.m, s.accepting), height_positive_dvpa(f.alphabet().al, f.alphabet().marker));
}

Dvpa build_Me(const MorphismPresentation& m, int e, const Budgets& budgets) {
    LeFamily f(m, budgets);
    const auto* mp = &m;
    int R = m.alg.r_size, bot = R + static_cast<int>(m.alg.o.size());
    auto s = f.recognizer([mp, R, bot, e](int x, int) { return x >= R && x != bot && mp->alg.compose(e, x - R) == e; });
    return dvpa_intersect(ext_to_dvpa(s.m, s.accepting), height_positive_dvpa(f.alphabet().al, f.alphabet().marker));
}

}  // namespace vpl
