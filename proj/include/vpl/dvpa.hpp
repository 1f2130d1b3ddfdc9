#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vpl/alphabet.hpp"

namespace vpl {

inline constexpr int kBottom = 0;
inline const std::string kBottomName = "_BOT_";

// Deterministic VPA with a total transition table. Stack symbol 0 is the bottom.
// A return read on the bottom pops it; the run is then dead and never accepts.
struct Dvpa {
    VpAlphabet alphabet;
    std::vector<std::string> states;
    std::vector<std::string> stack;  // stack[0] is the bottom symbol
    int initial = 0;
    std::vector<char> finals;
    std::vector<int> to;    // (q * |Sigma| + s) * |Gamma| + top
    std::vector<int> push;  // pushed symbol for calls, -1 otherwise

    Dvpa() = default;
    Dvpa(VpAlphabet al, std::vector<std::string> state_names, std::vector<std::string> stack_names);

    std::size_t num_states() const { return states.size(); }
    std::size_t num_stack() const { return stack.size(); }
    std::size_t idx(int q, Symbol s, int top) const {
        return (static_cast<std::size_t>(q) * alphabet.size() + static_cast<std::size_t>(s)) * stack.size() +
               static_cast<std::size_t>(top);
    }
    int next(int q, Symbol s, int top) const { return to[idx(q, s, top)]; }
    int pushed(int q, Symbol s, int top) const { return push[idx(q, s, top)]; }
    void set(int q, Symbol s, int top, int target, int pushed_symbol = -1);
    bool is_final(int q) const { return finals[static_cast<std::size_t>(q)] != 0; }

    // Throws InvalidInput on shape violations (undefined entries, bad push).
    void validate() const;
};

struct RunResult {
    int state = 0;
    std::vector<int> stack;  // bottom first; empty iff the run died
    bool alive = true;
};

RunResult dvpa_run(const Dvpa& a, const Word& w);
bool dvpa_accepts(const Dvpa& a, const Word& w);

enum class BoolOp { Intersect, Union, Complement };
Dvpa dvpa_boolean(BoolOp op, const Dvpa& a, const Dvpa* b = nullptr);
inline Dvpa dvpa_intersect(const Dvpa& a, const Dvpa& b) { return dvpa_boolean(BoolOp::Intersect, a, &b); }
inline Dvpa dvpa_union(const Dvpa& a, const Dvpa& b) { return dvpa_boolean(BoolOp::Union, a, &b); }
inline Dvpa dvpa_complement(const Dvpa& a) { return dvpa_boolean(BoolOp::Complement, a); }

// Drops states and stack symbols that no run from the initial configuration uses.
Dvpa dvpa_trim(const Dvpa& a);

struct EmptinessResult {
    bool empty = true;
    std::optional<Word> witness;  // a shortest accepted word
};
EmptinessResult dvpa_emptiness(const Dvpa& a);

struct EquivalenceResult {
    bool equal = true;
    std::optional<Word> witness;  // shortest word in the symmetric difference
};
EquivalenceResult dvpa_equivalence(const Dvpa& a, const Dvpa& b);

// Nondeterministic VPA. top == -1 on a call or internal transition matches any top.
struct NvpaTransition {
    int from;
    Symbol sym;
    int top;
    int to;
    int push;  // calls only
};

struct Nvpa {
    VpAlphabet alphabet;
    std::vector<std::string> states;
    std::vector<std::string> stack;  // stack[0] is the bottom symbol
    std::vector<int> initials;
    std::vector<char> finals;
    std::vector<NvpaTransition> trans;

    void validate() const;
};

bool nvpa_accepts(const Nvpa& n, const Word& w);
Dvpa nvpa_determinize(const Nvpa& n, const Budgets& budgets = {});

// Vertically visibly pushdown grammar. The production start -> eps is implicit.
struct VvpgProduction {
    int lhs;
    Word u;
    int rhs;
    Word v;
};

struct Vvpg {
    VpAlphabet alphabet;
    std::vector<std::string> nonterminals;
    int start = 0;
    std::vector<VvpgProduction> prods;

    void validate() const;
};

bool vvpg_derives(const Vvpg& g, const Word& w);
Nvpa vvpg_to_nvpa(const Vvpg& g);

// Visibly counter automaton with threshold m: delta[i] is used at height i, delta[m] above.
struct Vca {
    VpAlphabet alphabet;
    std::vector<std::string> states;
    int initial = 0;
    std::vector<char> finals;
    int threshold = 0;
    std::vector<std::vector<int>> delta;  // delta[i][q * |Sigma| + s]

    void validate() const;
};

bool vca_accepts(const Vca& v, const Word& w);
Dvpa vca_to_dvpa(const Vca& v);

}  // namespace vpl
