#pragma once

#include <string>
#include <vector>

#include "vpl/dvpa.hpp"
#include "vpl/ext_algebra.hpp"
#include "vpl/semilinear.hpp"

namespace vpl {

// Realtime PDA accepting by final state with any stack. stack[0] is the bottom.
struct PdaTransition {
    int from;
    int sym;
    int top;
    int to;
    std::vector<int> push;  // replaces top; first element becomes the new top
};

struct Pda {
    std::vector<std::string> states;
    std::vector<std::string> input;
    std::vector<std::string> stack;
    int initial = 0;
    std::vector<char> finals;
    std::vector<PdaTransition> trans;

    void validate() const;
};

bool pda_accepts(const Pda& p, const std::vector<int>& w);
Pda dvpa_to_pda(const Dvpa& a);
// Input becomes {"0", "#", "1"}: letters before the marker read as 0, after as 1.
Pda length_project(const Pda& p, int marker);
inline constexpr int kLen0 = 0, kLenMarker = 1, kLen1 = 2;

// Rhs symbols: t >= 0 is terminal t, t < 0 is nonterminal -t - 1.
struct CfgProduction {
    int lhs;
    std::vector<int> rhs;
};

struct Cfg {
    std::vector<std::string> nonterminals;
    std::vector<std::string> terminals;
    int start = 0;
    std::vector<CfgProduction> prods;

    static int nt(int n) { return -n - 1; }
    static bool is_nt(int s) { return s < 0; }
    static int nt_index(int s) { return -s - 1; }
};

Cfg pda_to_cfg(const Pda& p);
// Drops nonproductive and unreachable nonterminals; an empty language keeps only the start.
Cfg cfg_trim(const Cfg& g);
bool cfg_derives(const Cfg& g, const std::vector<int>& w);

// Parikh image over the given terminals (one coordinate each, in order).
SemilinearSet parikh_image(const Cfg& g, const std::vector<int>& tracked, std::size_t budget = 4096);

// Length grammar over {0, #, 1} of the words u#v with exactly one marker and
// phi(u#v) accepting, for a recognizer over an alphabet containing the marker.
Cfg marked_length_cfg(const MorphismPresentation& m, const std::vector<char>& accepting, Symbol marker);
SemilinearSet parikh_of_recognizer(const MorphismPresentation& m, const std::vector<char>& accepting, Symbol marker);
// Same image through dvpa_to_pda, length_project and pda_to_cfg.
SemilinearSet parikh_of_marked(const Dvpa& a, Symbol marker);

}  // namespace vpl
