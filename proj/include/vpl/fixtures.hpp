#pragma once

#include <string>
#include <vector>

#include "vpl/dvpa.hpp"

namespace vpl::fixtures {

// S -> a S b1 | a c S b2 | eps over call a, internal c, returns b1 b2.
VpAlphabet l12_alphabet();
Dvpa l12();
Vvpg l12_grammar();
// The words of l12 with an even number of c.
Dvpa k_even();
Vvpg k_grammar();
// Well-matched words over one call a and one return b.
Dvpa dyck1();
// a^n b^n; n >= 0, or n >= 1 when `positive`.
Dvpa anbn(bool positive = false);
Vca anbn_vca();
// Internal letters 0 and 1, even number of 1.
Dvpa mod2();

struct Named {
    std::string name;
    Dvpa dvpa;
};
std::vector<Named> all();

}  // namespace vpl::fixtures
