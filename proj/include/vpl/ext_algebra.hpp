#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vpl/alphabet.hpp"
#include "vpl/dvpa.hpp"

namespace vpl {

using Map = std::vector<int>;  // a self-map of R, stored as images

struct MapHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) h = (h ^ static_cast<std::size_t>(x + 1)) * 1099511628211ull;
        return h;
    }
};

// Finite Ext-algebra (R, O). O may be partial (o_complete == false): it then only
// holds the identity and the pair images of some presentation.
struct ExtAlgebra {
    int r_size = 0;
    std::vector<int> mult;  // row-major r_size x r_size
    int r_one = 0;
    std::vector<Map> o;
    int o_one = 0;
    bool o_complete = false;
    std::vector<std::string> r_labels;

    int mul(int x, int y) const { return mult[static_cast<std::size_t>(x) * static_cast<std::size_t>(r_size) + static_cast<std::size_t>(y)]; }
    Map lambda_map(int r) const;
    Map rho_map(int r) const;
    static Map compose_maps(const Map& e, const Map& f);  // e o f: apply f first

    void index_o();  // rebuild lookup after editing o
    int find_o(const Map& m) const;  // -1 if absent
    int compose(int e, int f) const;  // index of e o f; throws InternalError if not closed
    int lambda(int r) const;
    int rho(int r) const;
    std::size_t o_size() const { return o.size(); }
    // Dense composition table, computed on first use.
    const std::vector<int>& compose_table() const;

private:
    std::unordered_map<Map, int, MapHash> o_index_;
    mutable std::vector<int> comp_;
};

// Finite data determining a morphism from the free Ext-algebra.
struct MorphismPresentation {
    VpAlphabet alphabet;
    ExtAlgebra alg;
    std::vector<int> phi_int;  // indexed by internal class index: element of R
    std::vector<int> psi;      // indexed by pair index: element of O
    std::vector<Word> r_words;  // optional representative word per element of R
};

struct Recognizer {
    MorphismPresentation m;
    std::vector<char> accepting;  // subset of R
};

struct SyntacticResult {
    MorphismPresentation m;
    std::vector<char> accepting;
    std::vector<int> quotient_map;  // recognizer element -> syntactic element, -1 outside the image
};

// Algebra whose elements are produced on demand. Element ids are dense and stable.
class LazyAlgebra {
public:
    virtual ~LazyAlgebra() = default;
    virtual const VpAlphabet& alphabet() const = 0;
    virtual int one() = 0;
    virtual int letter(Symbol internal) = 0;
    virtual int mul(int x, int y) = 0;
    virtual int lift(Symbol call, Symbol ret, int x) = 0;
    virtual bool accepting(int x) = 0;
    virtual std::size_t size() const = 0;
    virtual std::string label(int x) { return std::to_string(x); }
};

// R restricted to the image of the free algebra, with the pair lifts as maps on it.
struct ImageAlgebra {
    VpAlphabet alphabet;
    int r_size = 0;
    std::vector<int> mult;
    int r_one = 0;
    std::vector<Map> lifts;  // by pair index
    std::vector<int> phi_int;
    std::vector<char> accepting;
    std::vector<int> source;  // lazy id of each element
    std::vector<Word> words;  // representative word per element
};

ImageAlgebra image_closure(LazyAlgebra& a, const Budgets& budgets);
// Coarsest congruence refining the accepting set; returns class per element.
std::vector<int> syntactic_partition(const ImageAlgebra& img);
// Quotient by a congruence. With close, O is closed on the quotient; otherwise it
// holds only the pair images.
SyntacticResult quotient_image(const ImageAlgebra& img, const std::vector<int>& cls, const Budgets& budgets,
                               bool close = true);
SyntacticResult syntactic_of(LazyAlgebra& a, const Budgets& budgets);

// Closes O from identity, all lambda/rho and the pair images.
void close_o(MorphismPresentation& m, const Budgets& budgets);

// Lazy view of a materialized recognizer.
class MaterializedAlgebra : public LazyAlgebra {
public:
    MaterializedAlgebra(const MorphismPresentation& m, std::vector<char> accepting)
        : m_(m), acc_(std::move(accepting)) {}
    const VpAlphabet& alphabet() const override { return m_.alphabet; }
    int one() override { return m_.alg.r_one; }
    int letter(Symbol c) override { return m_.phi_int[static_cast<std::size_t>(m_.alphabet.class_index(c))]; }
    int mul(int x, int y) override { return m_.alg.mul(x, y); }
    int lift(Symbol a, Symbol b, int x) override {
        return m_.alg.o[static_cast<std::size_t>(m_.psi[static_cast<std::size_t>(m_.alphabet.pair_index(a, b))])][static_cast<std::size_t>(x)];
    }
    bool accepting(int x) override { return acc_[static_cast<std::size_t>(x)] != 0; }
    std::size_t size() const override { return static_cast<std::size_t>(m_.alg.r_size); }
    std::string label(int x) override {
        return m_.alg.r_labels.empty() ? std::to_string(x) : m_.alg.r_labels[static_cast<std::size_t>(x)];
    }

private:
    const MorphismPresentation& m_;
    std::vector<char> acc_;
};

// Transition algebra of a DVPA: elements are maps Q x Gamma -> Q.
class DvpaAlgebra : public LazyAlgebra {
public:
    explicit DvpaAlgebra(const Dvpa& a);
    const VpAlphabet& alphabet() const override { return a_.alphabet; }
    int one() override;
    int letter(Symbol c) override;
    int mul(int x, int y) override;
    int lift(Symbol a, Symbol b, int x) override;
    bool accepting(int x) override;
    std::size_t size() const override { return elems_.size(); }
    const std::vector<int>& element(int x) const { return elems_[static_cast<std::size_t>(x)]; }

private:
    int intern(std::vector<int> f);
    const Dvpa& a_;
    std::size_t nq_, ng_;
    std::vector<std::vector<int>> elems_;
    std::unordered_map<std::vector<int>, int, MapHash> index_;
};

struct Violation {
    bool ok = true;
    std::string message;
};
Violation validate_ext_algebra(const ExtAlgebra& a);

struct StairFactorization {
    std::vector<Context> sides;                      // (x_i, y_i), i = 1..h
    std::vector<std::pair<Symbol, Symbol>> steps;     // (a_i, b_i), i = 1..h-1
    std::size_t height() const { return sides.size(); }
    Context recompose() const;
};
StairFactorization stair_factorize(const VpAlphabet& al, const Context& ctx);

int eval_phi(const MorphismPresentation& m, const Word& w);
// psi(ext_{u,v}) as a map, without looking it up in O.
Map eval_psi_map(const MorphismPresentation& m, const Context& ctx);
int eval_psi(const MorphismPresentation& m, const Context& ctx);  // index in O

Recognizer dvpa_to_ext(const Dvpa& a, const Budgets& budgets = {}, bool with_o = true);
Dvpa ext_to_dvpa(const MorphismPresentation& m, const std::vector<char>& accepting);
SyntacticResult syntactic_quotient(const Recognizer& r, const Budgets& budgets = {});
SyntacticResult syntactic_of_dvpa(const Dvpa& a, const Budgets& budgets = {});
bool recognizer_accepts(const Recognizer& r, const Word& w);

// Finite monoid given by a dense table; generators speed up ideal computations.
struct FiniteMonoid {
    int n = 0;
    std::vector<int> table;
    int one = 0;
    std::vector<int> gens;  // empty: all elements
    int mul(int x, int y) const { return table[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + static_cast<std::size_t>(y)]; }
};
FiniteMonoid r_monoid(const ExtAlgebra& a);
FiniteMonoid o_monoid(const ExtAlgebra& a);

int idempotent_power(const FiniteMonoid& m);
bool is_idempotent(const FiniteMonoid& m, int x);

struct FReachable {
    std::vector<char> r;
    std::vector<char> o;
};
FReachable f_reachable(const ExtAlgebra& a, const std::vector<char>& accepting);

struct GreenRelations {
    std::vector<int> r_class, l_class, j_class, h_class;
    std::vector<std::vector<char>> leq_j;  // leq_j[x][y]: x <=_J y
    bool leq_J(int x, int y) const { return leq_j[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] != 0; }
    bool less_J(int x, int y) const { return leq_J(x, y) && j_class[static_cast<std::size_t>(x)] != j_class[static_cast<std::size_t>(y)]; }
};
GreenRelations green_relations(const FiniteMonoid& m);

struct GroupInfo {
    int idempotent;
    std::vector<int> elements;
    bool solvable;
};
struct SubgroupReport {
    std::vector<GroupInfo> groups;  // one per idempotent
    bool solvable = true;
};
SubgroupReport maximal_subgroups_and_solvability(const FiniteMonoid& m);
bool group_is_solvable(const FiniteMonoid& m, const std::vector<int>& group, int identity);

int nesting_depth(const VpAlphabet& al, const Word& w);

// The morphism of the mirror language: calls and returns swap, R multiplication
// is reversed, O keeps its maps.
MorphismPresentation mirror_presentation(const MorphismPresentation& m);
Word mirror_word(const VpAlphabet& mirrored, const VpAlphabet& original, const Word& w);

}  // namespace vpl
