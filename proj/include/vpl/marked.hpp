#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vpl/dvpa.hpp"
#include "vpl/ext_algebra.hpp"
#include "vpl/semilinear.hpp"

namespace vpl {

// Base alphabet plus a fresh internal marker and, optionally, a barred copy
// with calls and returns swapped.
struct MarkedAlphabet {
    VpAlphabet base;
    VpAlphabet al;
    Symbol marker = -1;
    bool barred = false;
    std::string bar_prefix;
    std::vector<Symbol> plain;  // base symbol -> symbol of al
    std::vector<Symbol> bar;    // base symbol -> its barred symbol, empty unless barred
    std::vector<Symbol> origin;  // symbol of al -> base symbol, -1 for the marker
    std::vector<char> is_bar;    // symbol of al -> 1 if barred

    // Reversed, barred copy of a base word.
    Word barred_reverse(const Word& w) const;
    Word lift(const Word& w) const;
};

std::string fresh_name(const VpAlphabet& al, std::string name);
MarkedAlphabet marked_alphabet(const VpAlphabet& base);
MarkedAlphabet barred_alphabet(const VpAlphabet& base);

// Words u#v with exactly one marker, read at positive stack height.
Dvpa height_positive_dvpa(const VpAlphabet& al, Symbol marker);

// R u O u {bot}: phi(w) on unmarked words, psi(u,v) on u#v, bot otherwise.
class LeAlgebra : public LazyAlgebra {
public:
    LeAlgebra(const MorphismPresentation& m, const MarkedAlphabet& ma);
    const VpAlphabet& alphabet() const override { return ma_.al; }
    int one() override { return m_.alg.r_one; }
    int letter(Symbol c) override;
    int mul(int x, int y) override;
    int lift(Symbol a, Symbol b, int x) override;
    bool accepting(int) override { return false; }
    std::size_t size() const override { return static_cast<std::size_t>(bot_ + 1); }
    std::string label(int x) override;

    int r_size() const { return m_.alg.r_size; }
    bool is_op(int x) const { return x >= m_.alg.r_size && x < bot_; }
    int op(int x) const { return x - m_.alg.r_size; }
    int bottom() const { return bot_; }

private:
    const MorphismPresentation& m_;
    const MarkedAlphabet& ma_;
    int bot_;
};

// Elements: R, barred R, nonempty sets of O-pairs, bot and a fresh identity.
class KeAlgebra : public LazyAlgebra {
public:
    enum class Tag : std::uint8_t { R, Bar, Set, Bot, One };
    struct Elem {
        Tag tag;
        int val;  // element of R, or set id
        bool operator<(const Elem& o) const { return tag != o.tag ? tag < o.tag : val < o.val; }
    };
    using PairSet = std::vector<std::pair<int, int>>;

    KeAlgebra(const MorphismPresentation& m, const MarkedAlphabet& ma, const Budgets& budgets);
    const VpAlphabet& alphabet() const override { return ma_.al; }
    int one() override { return one_; }
    int letter(Symbol c) override;
    int mul(int x, int y) override;
    int lift(Symbol a, Symbol b, int x) override;
    bool accepting(int) override { return false; }
    std::size_t size() const override { return elems_.size(); }
    std::string label(int x) override;

    const Elem& elem(int x) const { return elems_[static_cast<std::size_t>(x)]; }
    const PairSet& pairs(int set_id) const { return sets_[static_cast<std::size_t>(set_id)]; }
    bool contains_pair(int x, int e1, int e2) const;

private:
    int intern(Elem e);
    int intern_set(PairSet s);

    const MorphismPresentation& m_;
    const MarkedAlphabet& ma_;
    Budgets budgets_;
    std::vector<Elem> elems_;
    std::map<Elem, int> index_;
    std::vector<PairSet> sets_;
    std::map<PairSet, int> set_index_;
    int one_, bot_;
    std::vector<int> lambda_, rho_;
};

// Marker count and height: N none, Z at height zero, P at positive height.
class HpAlgebra : public LazyAlgebra {
public:
    enum { N = 0, Z = 1, P = 2, Bot = 3 };
    HpAlgebra(const VpAlphabet& al, Symbol marker) : al_(al), marker_(marker) {}
    const VpAlphabet& alphabet() const override { return al_; }
    int one() override { return N; }
    int letter(Symbol c) override { return c == marker_ ? Z : N; }
    int mul(int x, int y) override;
    int lift(Symbol, Symbol, int x) override { return x == Z ? P : x; }
    bool accepting(int x) override { return x == P; }
    std::size_t size() const override { return 4; }

private:
    const VpAlphabet& al_;
    Symbol marker_;
};

class ProductAlgebra : public LazyAlgebra {
public:
    ProductAlgebra(LazyAlgebra& a, LazyAlgebra& b) : a_(a), b_(b) {}
    const VpAlphabet& alphabet() const override { return a_.alphabet(); }
    int one() override { return intern(a_.one(), b_.one()); }
    int letter(Symbol c) override { return intern(a_.letter(c), b_.letter(c)); }
    int mul(int x, int y) override;
    int lift(Symbol a, Symbol b, int x) override;
    bool accepting(int x) override;
    std::size_t size() const override { return pairs_.size(); }
    std::string label(int x) override;
    std::pair<int, int> parts(int x) const { return pairs_[static_cast<std::size_t>(x)]; }

private:
    int intern(int x, int y);
    LazyAlgebra& a_;
    LazyAlgebra& b_;
    std::vector<std::pair<int, int>> pairs_;
    std::map<std::pair<int, int>, int> index_;
};

// Image of a marked algebra times HP, closed once; languages of the family differ
// only in their accepting sets.
class MarkedFamily {
public:
    // Accepting predicate on (marked element, HP element).
    using Pred = std::function<bool(int, int)>;

    const MarkedAlphabet& alphabet() const { return ma_; }
    const ImageAlgebra& image() const { return img_; }
    SyntacticResult recognizer(const Pred& acc) const;
    SemilinearSet parikh(const Pred& acc) const;
    bool empty(const Pred& acc) const;

protected:
    MarkedFamily() = default;
    void close(LazyAlgebra& marked, const Budgets& budgets);
    std::vector<char> select(const Pred& acc) const;

    MarkedAlphabet ma_;
    Budgets budgets_;
    ImageAlgebra img_;
    std::vector<std::pair<int, int>> parts_;  // per image element
    mutable std::map<std::vector<char>, SemilinearSet> parikh_cache_;  // by accepting selection
};

class LeFamily : public MarkedFamily {
public:
    LeFamily(const MorphismPresentation& m, const Budgets& budgets = {});
    // L_e; with `up`, only markers at positive height.
    SyntacticResult build_Le(int e, bool up = false) const;
    SemilinearSet parikh_Le(int e, bool up = false) const;
    // Union of L_f over e o f = e, at positive height.
    SyntacticResult build_Me(int e) const;
    SemilinearSet parikh_Me(int e) const;
    Pred le_pred(int e, bool up) const;
    Pred me_pred(int e) const;
    int eval(const Word& w) const;  // element of the marked algebra for a word over the marked alphabet

private:
    const MorphismPresentation* m_;
    int r_size_;
    int bot_;
};

class KeFamily : public MarkedFamily {
public:
    KeFamily(const MorphismPresentation& m, const Budgets& budgets = {});
    SyntacticResult build_Ke(int e, bool up = false) const;
    SemilinearSet parikh_Ke(int e, bool up = false) const;
    Pred ke_pred(int e, bool up) const;
    // Pairs (psi(u,v), psi(u',v)) reached by a word, empty for non-set elements.
    KeAlgebra::PairSet pairs_of(const Word& w) const;

private:
    std::unique_ptr<KeAlgebra> ke_;
    std::vector<int> set_of_;  // per image element: set id or -1
    const MorphismPresentation* m_;
};

// DVPA versions: ext_to_dvpa of the marked recognizer, intersected with the
// height-positive DVPA where required.
Dvpa build_Le_dvpa(const MorphismPresentation& m, int e, const Budgets& budgets = {});
Dvpa build_Le_up(const MorphismPresentation& m, int e, const Budgets& budgets = {});
Dvpa build_Ke_up(const MorphismPresentation& m, int e, const Budgets& budgets = {});
Dvpa build_Me(const MorphismPresentation& m, int e, const Budgets& budgets = {});

}  // namespace vpl
