#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vpl/dvpa.hpp"
#include "vpl/ext_algebra.hpp"
#include "vpl/marked.hpp"
#include "vpl/semilinear.hpp"

namespace vpl {

using Quad = std::array<long, 4>;  // (k0, l0, k0', l0')

struct ContextPair {
    Context first, second;
    Quad lengths{};
};

// Shared precomputation for one syntactic morphism and accepting set F.
class Analysis {
public:
    Analysis(MorphismPresentation m, std::vector<char> accepting, const Budgets& budgets = {});
    Analysis(const Analysis&) = delete;
    Analysis& operator=(const Analysis&) = delete;

    const MorphismPresentation& presentation() const { return m_; }
    const std::vector<char>& accepting() const { return acc_; }
    const Budgets& budgets() const { return budgets_; }
    const FReachable& reachable() const { return fr_; }
    const FiniteMonoid& o_monoid() const { return om_; }
    // F-reachable idempotents of O, ascending.
    const std::vector<int>& idempotents() const { return idem_; }

    const LeFamily& le() const;
    const KeFamily& ke() const;
    const KeFamily& ke_mirror() const;
    const MorphismPresentation& mirror() const { return mirror_; }

    const SemilinearSet& p_le(int e) const;     // P(L_e)
    const SemilinearSet& p_le_up(int e) const;  // P(L_e up)
    const SemilinearSet& p_ke_up(int e, bool mirrored) const;
    const SemilinearSet& s_e(int e) const;  // P(M_e)

private:
    MorphismPresentation m_;
    std::vector<char> acc_;
    Budgets budgets_;
    FReachable fr_;
    FiniteMonoid om_;
    std::vector<int> idem_;
    MorphismPresentation mirror_;
    mutable std::unique_ptr<LeFamily> le_;
    mutable std::unique_ptr<KeFamily> ke_, ke_mirror_;
    mutable std::map<int, SemilinearSet> p_le_, p_le_up_, p_ke_up_, p_ke_up_mirror_, s_e_;
};

struct WeakLsResult {
    bool ok = true;
    int e = -1;
    bool mirrored = false;  // witness shares u instead of v
    Vec lengths;            // the unequal pair
    std::optional<ContextPair> contexts;  // (u,v),(u',v) or (u,v),(u,v')
};
WeakLsResult decide_weak_ls(const Analysis& an);

struct LsResult {
    bool ok = true;
    int e = -1;
    Quad quad{};
};
LsResult decide_ls(const Analysis& an);
// Smallest member and smallest member off its ray, for one idempotent.
std::optional<Quad> ls_witness(const SemilinearSet& s);

struct QaResult {
    bool ok = true;
    std::vector<int> group;  // witness group in O, generator powers in cycle order
    Vec kl;                  // common length pair
};
QaResult decide_quasi_aperiodic(const Analysis& an);
// Enumerates every subset of O that is a nontrivial group; only for small O.
QaResult quasi_aperiodic_by_subsets(const Analysis& an, std::size_t max_o = 8);

struct ModWitness {
    int m = 0;
    int identity = -1, generator = -1;
    Context identity_ctx, generator_ctx;
};
ModWitness mod_m_witness(const Analysis& an, const QaResult& qa);

std::vector<int> compute_Z(const Analysis& an);

struct PieceSets {
    std::vector<int> left, right;          // relevant classes of x pieces and y pieces
    std::map<int, long> length;            // forced length per relevant class
    std::map<int, std::vector<Word>> words;
    std::vector<Word> left_words() const;
    std::vector<Word> right_words() const;
};
PieceSets compute_piece_sets(const Analysis& an, int e);

// The tagged alphabet: calls, returns and internals of the base, tilde and bar
// copies of every letter as internals, and the marker.
struct TaggedAlphabet {
    VpAlphabet base;
    VpAlphabet al;
    std::vector<Symbol> plain, tilde, bar;
    Symbol marker = -1;
    std::vector<Symbol> origin;  // -1 for the marker
};
TaggedAlphabet tagged_alphabet(const VpAlphabet& base);
// (u#v)^ddagger for a context (u,v) with positive height.
Word tag_context(const TaggedAlphabet& t, const Context& c);
// Inverse on tagged words of the grammar: tilde letters go left, bar letters right.
Context untag_word(const TaggedAlphabet& t, const Word& w);

Vvpg build_Ge(const Analysis& an, int e, const PieceSets& pieces, const TaggedAlphabet& t);

struct KlResult {
    long k = 0, l = 0;
    ContextPair found;       // contexts at the quadruple's lengths
    ContextPair normalized;  // after equalizing heights
    int formula_case = 0;    // 1: |v| = |v'|, 2: |u| = |u'|, 3: otherwise
};
KlResult compute_kl(const Analysis& an, int e, const Quad& quad);

// First context of the given lengths, positive height and psi image e.
std::optional<Context> find_context(const MorphismPresentation& m, long k, long l, int e, bool positive);

struct IntermediateCheck {
    bool weak_ls = false, ls = false, quasi_aperiodic = false;
    std::size_t r_size = 0, o_size = 0;
    bool intermediate() const { return weak_ls && !ls && quasi_aperiodic; }
};
IntermediateCheck verify_intermediate(const Vvpg& g, const Budgets& budgets = {});

enum class Verdict { AC0, ModHard, Tc0Hard, Intermediate };
std::string verdict_name(Verdict v);

struct Diagnostics {
    bool weak_ls = true, ls = true, quasi_aperiodic = true, solvable = true;
    int r_size = 0, o_size = 0;
    int r_j_classes = 0, o_j_classes = 0;
    std::vector<int> z;
    int witness_e = -1;
    bool witness_mirrored = false;
    int kl_case = 0;
    std::vector<int> mod_group;
    std::vector<int> grammar_e;
    std::vector<bool> grammar_verified;
};

struct ClassificationReport {
    Verdict verdict = Verdict::AC0;
    VpAlphabet alphabet;
    std::optional<int> mod_m;
    std::optional<std::pair<long, long>> kl;
    std::optional<ContextPair> contexts;
    std::vector<Vvpg> grammars;
    Diagnostics diag;
    std::string note;
};

struct ClassifyOptions {
    Budgets budgets;
    bool verify_grammars = false;
};
ClassificationReport classify(const Dvpa& a, const ClassifyOptions& opt = {});
ClassificationReport classify_algebra(const SyntacticResult& s, const ClassifyOptions& opt = {});

}  // namespace vpl
