#pragma once

// The hand-written presentation of the syntactic algebra of L12 (S -> a S b1 | a c S b2 | eps).
// Element order: acb1 (zero), eps, c, cab1, ab1.

#include <algorithm>

#include "vpl/ext_algebra.hpp"
#include "vpl/fixtures.hpp"

namespace vpl::testing {

struct ReferenceL12 {
    MorphismPresentation m;
    std::vector<char> accepting;
    std::vector<Map> pair_maps;  // the six maps beyond the multiplications
    Map psi_ab1, psi_ab2;
};

inline ReferenceL12 reference_l12() {
    ReferenceL12 p;
    auto& A = p.m.alg;
    A.r_size = 5;
    A.r_one = 1;
    A.mult = {0, 0, 0, 0, 0,  //
              0, 1, 2, 3, 4,  //
              0, 2, 0, 0, 3,  //
              0, 3, 0, 0, 0,  //
              0, 4, 0, 0, 0};
    A.r_labels = {"acb1", "eps", "c", "cab1", "ab1"};
    p.pair_maps = {
        {0, 0, 4, 4, 0},  // (a,b2)
        {0, 0, 3, 3, 0},  // (ca,b2)
        {0, 0, 3, 0, 0},  // (ca,ab1b2)
        {0, 3, 0, 0, 3},  // (ca,b1)
        {0, 0, 4, 0, 0},  // (a,ab1b2)
        {0, 4, 0, 0, 4},  // (a,b1)
    };
    p.psi_ab2 = p.pair_maps[0];
    p.psi_ab1 = p.pair_maps[5];
    std::vector<Map> o;
    auto add = [&](const Map& f) {
        if (std::find(o.begin(), o.end(), f) == o.end()) o.push_back(f);
    };
    for (int r = 0; r < 5; ++r) {
        Map l(5), rr(5);
        for (int x = 0; x < 5; ++x) {
            l[static_cast<std::size_t>(x)] = A.mul(r, x);
            rr[static_cast<std::size_t>(x)] = A.mul(x, r);
        }
        add(l);
        add(rr);
    }
    for (const auto& f : p.pair_maps) add(f);
    A.o = o;
    A.o_one = static_cast<int>(std::find(o.begin(), o.end(), Map{0, 1, 2, 3, 4}) - o.begin());
    A.o_complete = true;
    A.index_o();
    p.m.alphabet = fixtures::l12_alphabet();
    const auto& al = p.m.alphabet;
    p.m.phi_int.assign(al.ints().size(), 0);
    p.m.phi_int[static_cast<std::size_t>(al.class_index(al.id("c")))] = 2;
    p.m.psi.assign(al.calls().size() * al.rets().size(), 0);
    p.m.psi[static_cast<std::size_t>(al.pair_index(al.id("a"), al.id("b1")))] = A.find_o(p.psi_ab1);
    p.m.psi[static_cast<std::size_t>(al.pair_index(al.id("a"), al.id("b2")))] = A.find_o(p.psi_ab2);
    p.accepting = {0, 1, 0, 0, 1};
    return p;
}

}  // namespace vpl::testing
