#include <numeric>

#include "doctest.h"
#include "reference_l12.hpp"
#include "support.hpp"

using namespace vpl;
using vpl::testing::w;

namespace {

FiniteMonoid cyclic(int n) {
    FiniteMonoid m;
    m.n = n;
    m.one = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) m.table.push_back((x + y) % n);
    return m;
}

// Permutations of 5 points; even ones form A5.
FiniteMonoid alternating5(std::vector<int>& group) {
    std::vector<std::array<int, 5>> perms;
    std::array<int, 5> p{0, 1, 2, 3, 4};
    do {
        int inv = 0;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) inv += p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)];
        if (inv % 2 == 0) perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    FiniteMonoid m;
    m.n = static_cast<int>(perms.size());
    m.one = 0;
    for (const auto& x : perms)
        for (const auto& y : perms) {
            std::array<int, 5> z{};
            for (int i = 0; i < 5; ++i) z[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])];
            m.table.push_back(static_cast<int>(std::find(perms.begin(), perms.end(), z) - perms.begin()));
        }
    group.resize(perms.size());
    std::iota(group.begin(), group.end(), 0);
    return m;
}

std::string pieces(const VpAlphabet& al, const StairFactorization& f) {
    std::string s;
    for (std::size_t i = 0; i < f.sides.size(); ++i) {
        s += context_to_string(al, f.sides[i]);
        if (i < f.steps.size()) s += " " + al.name(f.steps[i].first) + "/" + al.name(f.steps[i].second) + " ";
    }
    return s;
}

}  // namespace

TEST_SUITE("ext-algebra") {

TEST_CASE("validation") {
    ExtAlgebra t;
    t.r_size = 1;
    t.mult = {0};
    t.o = {{0}};
    t.o_complete = true;
    t.index_o();
    CHECK(validate_ext_algebra(t).ok);
    auto p = testing::reference_l12();
    CHECK(validate_ext_algebra(p.m.alg).ok);
    auto bad = p.m.alg;
    bad.mult[2 * 5 + 2] = 2;  // c c = c
    CHECK_FALSE(validate_ext_algebra(bad).ok);
}

TEST_CASE("stair factorization") {
    auto al = fixtures::l12_alphabet();
    auto e = stair_factorize(al, Context{});
    CHECK(e.height() == 1);
    CHECK(e.sides[0] == Context{});
    auto f = stair_factorize(al, make_context(al, w(al, "a c a"), w(al, "b1 b2")));
    CHECK(f.height() == 3);
    CHECK(pieces(al, f) == "(, ) a/b2 (c, ) a/b1 (, )");
    CHECK(f.recompose() == make_context(al, w(al, "a c a"), w(al, "b1 b2")));
    auto g = stair_factorize(al, make_context(al, w(al, "a c"), w(al, "b2")));
    CHECK(g.height() == 2);
    CHECK(pieces(al, g) == "(, ) a/b2 (c, )");
}

TEST_CASE("evaluation on the hand presentation") {
    auto p = testing::reference_l12();
    const auto& al = p.m.alphabet;
    CHECK(eval_phi(p.m, {}) == p.m.alg.r_one);
    CHECK(eval_phi(p.m, w(al, "a b1")) == 4);
    CHECK(eval_phi(p.m, w(al, "a c b2")) == 4);
    CHECK(eval_psi(p.m, Context{}) == p.m.alg.o_one);
    auto ab1 = eval_psi(p.m, make_context(al, w(al, "a"), w(al, "b1")));
    CHECK(eval_psi(p.m, make_context(al, w(al, "a c"), w(al, "b2"))) == ab1);
    CHECK(p.m.alg.compose(ab1, ab1) == ab1);
    for (const auto& c : testing::naive_contexts(al, 6))
        CHECK(eval_psi_map(p.m, c) == testing::naive_psi_map(p.m, c));
}

TEST_CASE("dvpa to ext") {
    for (const auto& f : fixtures::all()) {
        auto r = dvpa_to_ext(f.dvpa);
        int n = 0;
        for (const auto& x : testing::naive_well_matched_words(f.dvpa.alphabet, 8)) {
            CHECK(recognizer_accepts(r, x) == testing::naive_accepts(f.dvpa, x));
            if (++n == 200) break;
        }
    }
    auto d = fixtures::dyck1();
    CHECK(syntactic_of_dvpa(d).m.alg.r_size == 1);
}

TEST_CASE("syntactic quotient") {
    auto s = syntactic_of_dvpa(fixtures::l12());
    CHECK(s.m.alg.r_size == 5);
    CHECK(s.m.alg.o.size() == 13);
    CHECK(std::count(s.accepting.begin(), s.accepting.end(), 1) == 2);
    auto p = testing::reference_l12();
    auto q = syntactic_quotient(Recognizer{p.m, p.accepting});
    auto qm = q.quotient_map;
    std::sort(qm.begin(), qm.end());
    CHECK(qm == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("ext to dvpa") {
    ExtAlgebra t;
    t.r_size = 1;
    t.mult = {0};
    t.o = {{0}};
    t.o_complete = true;
    t.index_o();
    VpAlphabet dy({"a"}, {}, {"b"});
    MorphismPresentation m{dy, t, {}, {0}, {}};
    CHECK(dvpa_equivalence(ext_to_dvpa(m, {1}), fixtures::dyck1()).equal);
    auto p = testing::reference_l12();
    CHECK(dvpa_equivalence(ext_to_dvpa(p.m, p.accepting), fixtures::l12()).equal);
    auto z = ext_to_dvpa(p.m, {1, 0, 0, 0, 0});
    CHECK(dvpa_accepts(z, w(p.m.alphabet, "a b2")));
}

TEST_CASE("idempotent powers") {
    FiniteMonoid one{1, {0}, 0, {}};
    CHECK(idempotent_power(one) == 1);
    CHECK(idempotent_power(cyclic(2)) == 2);
    auto p = testing::reference_l12();
    auto om = o_monoid(p.m.alg);
    int k = idempotent_power(om);
    for (int e = 0; e < om.n; ++e) {
        int x = e;
        for (int i = 1; i < k; ++i) x = om.mul(x, e);
        CHECK(is_idempotent(om, x));
    }
}

TEST_CASE("F-reachability") {
    auto p = testing::reference_l12();
    const auto& A = p.m.alg;
    auto all = f_reachable(A, std::vector<char>(5, 1));
    CHECK(std::count(all.r.begin(), all.r.end(), 1) == 5);
    auto none = f_reachable(A, std::vector<char>(5, 0));
    CHECK(std::count(none.r.begin(), none.r.end(), 1) == 0);
    auto fr = f_reachable(A, p.accepting);
    std::vector<char> reach(5, 0);
    for (const auto& f : A.o)
        for (int x = 0; x < 5; ++x)
            if (p.accepting[static_cast<std::size_t>(f[static_cast<std::size_t>(x)])]) reach[static_cast<std::size_t>(x)] = 1;
    CHECK(fr.r == reach);
    CHECK_FALSE(fr.r[0]);
    for (std::size_t e = 0; e < A.o.size(); ++e) {
        bool hit = false;
        for (int x = 0; x < 5; ++x) hit = hit || reach[static_cast<std::size_t>(A.o[e][static_cast<std::size_t>(x)])];
        CHECK(static_cast<bool>(fr.o[e]) == hit);
    }
}

TEST_CASE("Green relations") {
    FiniteMonoid one{1, {0}, 0, {}};
    CHECK(green_relations(one).j_class == std::vector<int>{0});
    auto p = testing::reference_l12();
    auto rm = r_monoid(p.m.alg);
    auto gr = green_relations(rm);
    for (int x = 0; x < 5; ++x) CHECK(gr.leq_J(0, x));
    auto om = o_monoid(p.m.alg);
    auto go = green_relations(om);
    const auto& al = p.m.alphabet;
    int small = eval_psi(p.m, make_context(al, w(al, "a a c a"), w(al, "b1 b1 b1")));
    int big = eval_psi(p.m, make_context(al, w(al, "a"), w(al, "b1")));
    CHECK(go.less_J(small, big));
}

TEST_CASE("subgroups and solvability") {
    auto p = testing::reference_l12();
    auto rep = maximal_subgroups_and_solvability(o_monoid(p.m.alg));
    CHECK(rep.solvable);
    for (const auto& g : rep.groups) CHECK(g.elements.size() == 1);
    auto z3 = maximal_subgroups_and_solvability(cyclic(3));
    CHECK(z3.solvable);
    bool three = false;
    for (const auto& g : z3.groups) three = three || g.elements.size() == 3;
    CHECK(three);
    std::vector<int> group;
    auto a5 = alternating5(group);
    CHECK(a5.n == 60);
    CHECK_FALSE(group_is_solvable(a5, group, 0));
    CHECK_FALSE(maximal_subgroups_and_solvability(a5).solvable);
}

TEST_CASE("nesting depth") {
    auto al = fixtures::l12_alphabet();
    VpAlphabet dy({"a"}, {}, {"b"});
    CHECK(nesting_depth(al, {}) == 0);
    CHECK(nesting_depth(al, w(al, "c")) == 0);
    CHECK(nesting_depth(dy, w(dy, "a b")) == 1);
    CHECK(nesting_depth(dy, w(dy, "a a b a b b")) == 2);
    for (const auto& x : testing::naive_well_matched_words(dy, 12)) CHECK(nesting_depth(dy, x) == testing::naive_nd(dy, x));
    for (const auto& x : testing::naive_well_matched_words(al, 7)) CHECK(nesting_depth(al, x) == testing::naive_nd(al, x));
}

TEST_CASE("mirror presentation") {
    auto s = syntactic_of_dvpa(fixtures::l12());
    auto mm = mirror_presentation(s.m);
    for (const auto& x : testing::naive_well_matched_words(s.m.alphabet, 7)) {
        Word y = mirror_word(mm.alphabet, s.m.alphabet, x);
        CHECK(s.accepting[static_cast<std::size_t>(eval_phi(s.m, x))] ==
              s.accepting[static_cast<std::size_t>(eval_phi(mm, y))]);
    }
}

}  // TEST_SUITE
