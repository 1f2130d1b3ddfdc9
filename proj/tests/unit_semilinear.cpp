#include "doctest.h"
#include "support.hpp"
#include "vpl/fixtures.hpp"
#include "vpl/parikh.hpp"
#include "vpl/semilinear.hpp"

using namespace vpl;
using vpl::testing::w;

namespace {

VpAlphabet marked_ab() { return VpAlphabet({"a"}, {"c", "#"}, {"b"}); }

// a^k # b^k for k >= 0.
Dvpa akbk() {
    auto al = marked_ab();
    enum { UP, MID, DOWN, D };
    Dvpa d(al, {"up", "mid", "down", "dead"}, {kBottomName, "X"});
    for (int q = 0; q < 4; ++q)
        for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s)
            for (int g = 0; g < 2; ++g) d.set(q, s, g, D, al.kind(s) == Kind::Call ? 1 : -1);
    Symbol a = al.id("a"), m = al.id("#"), b = al.id("b");
    for (int g = 0; g < 2; ++g) {
        d.set(UP, a, g, UP, 1);
        d.set(UP, m, g, MID);
        d.set(MID, b, g, DOWN);
        d.set(DOWN, b, g, DOWN);
    }
    d.finals[MID] = 1;
    d.finals[DOWN] = 1;
    d.validate();
    return d;
}

// The single word c # c.
Dvpa cmc() {
    auto al = marked_ab();
    Dvpa d(al, {"0", "1", "2", "3", "dead"}, {kBottomName, "X"});
    for (int q = 0; q < 5; ++q)
        for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s)
            for (int g = 0; g < 2; ++g) d.set(q, s, g, 4, al.kind(s) == Kind::Call ? 1 : -1);
    Symbol c = al.id("c"), m = al.id("#");
    for (int g = 0; g < 2; ++g) {
        d.set(0, c, g, 1);
        d.set(1, m, g, 2);
        d.set(2, c, g, 3);
    }
    d.finals[3] = 1;
    return d;
}

std::vector<int> to_ints(const Word& x) { return std::vector<int>(x.begin(), x.end()); }

}  // namespace

TEST_SUITE("parikh-semilinear") {

TEST_CASE("ultimately periodic sets") {
    auto a = UpSet::progression(1, 3);
    CHECK(a.contains(7));
    CHECK_FALSE(a.contains(6));
    auto u = a.unite(UpSet::progression(2, 3));
    CHECK(u.elements_upto(6) == std::vector<long>{1, 2, 4, 5});
    CHECK(UpSet::point(2).add(UpSet::point(3)).single() == 5);
    auto s = UpSet::point(2).star();
    CHECK(s.contains(0));
    CHECK(s.contains(4));
    CHECK_FALSE(s.contains(3));
    CHECK(UpSet::empty().is_empty());
}

TEST_CASE("semilinear operations") {
    auto s = SemilinearSet::linear({1, 1}, {{2, 2}});
    CHECK(s.contains({5, 5}));
    CHECK_FALSE(s.contains({2, 2}));
    auto t = s.add(SemilinearSet::point({0, 1}));
    CHECK(t.contains({3, 4}));
    auto st = SemilinearSet::point({1, 2}).star();
    CHECK(st.contains({0, 0}));
    CHECK(st.contains({3, 6}));
    CHECK(SemilinearSet::empty(2).star() == SemilinearSet::zero(2));
    auto m = s.unite(SemilinearSet::point({0, 3})).members_upto(6);
    CHECK(m == std::vector<Vec>{{0, 3}, {1, 1}, {3, 3}});
    CHECK(s.min_member() == Vec{1, 1});
}

TEST_CASE("diophantine") {
    auto x = diophantine_nonneg({{1}}, {3});
    REQUIRE(x);
    CHECK(*x == Vec{3});
    auto y = diophantine_nonneg({{2, -3}}, {0});
    REQUIRE(y);
    CHECK(*y == Vec{3, 2});
    CHECK_FALSE(diophantine_nonneg({{2}}, {1}));
    auto all = diophantine_solve({{1, 1}}, {2});
    CHECK(all.minimal.size() == 3);
}

TEST_CASE("intersection") {
    auto diag = SemilinearSet::linear({1, 1}, {{1, 1}});
    auto dbl = SemilinearSet::linear({2, 1}, {{2, 1}});
    CHECK_FALSE(semilinear_intersect_nonempty({diag, dbl}));
    auto i = semilinear_intersect(SemilinearSet::linear({0, 0}, {{2, 0}, {0, 1}}), SemilinearSet::linear({0, 0}, {{3, 3}}));
    CHECK(i.contains({6, 6}));
    CHECK_FALSE(i.contains({3, 3}));
    for (const auto& v : i.members_upto(30)) CHECK(v[0] % 6 == 0);
}

TEST_CASE("unequal coordinates") {
    CHECK_FALSE(semilinear_has_unequal_coords(SemilinearSet::linear({2, 2}, {{1, 1}})));
    auto u = semilinear_has_unequal_coords(SemilinearSet::linear({2, 2}, {{1, 2}}));
    REQUIRE(u);
    CHECK(*u == Vec{3, 4});
}

TEST_CASE("collinearity") {
    CHECK(semilinear_all_collinear(SemilinearSet::linear({1, 1}, {{2, 2}})));
    CHECK_FALSE(semilinear_all_collinear(SemilinearSet::linear({1, 1}, {{1, 2}})));
    CHECK(semilinear_all_collinear(SemilinearSet::linear({2, 4}, {{1, 2}}).unite(SemilinearSet::point({3, 6}))));
    CHECK_THROWS_AS(semilinear_all_collinear(SemilinearSet::zero(2)), InvalidInput);
}

TEST_CASE("pda translation") {
    auto dy = fixtures::dyck1();
    auto p = dvpa_to_pda(dy);
    testing::each_word(dy.alphabet, 8, [&](const Word& x) { CHECK(pda_accepts(p, to_ints(x)) == dvpa_accepts(dy, x)); });
    auto e = dy;
    e.finals.assign(e.finals.size(), 0);
    auto g = cfg_trim(pda_to_cfg(dvpa_to_pda(e)));
    testing::each_word(dy.alphabet, 4, [&](const Word& x) { CHECK_FALSE(cfg_derives(g, to_ints(x))); });
    auto gd = pda_to_cfg(p);
    testing::each_word(dy.alphabet, 8, [&](const Word& x) { CHECK(cfg_derives(gd, to_ints(x)) == dvpa_accepts(dy, x)); });
}

TEST_CASE("length projection") {
    auto d = cmc();
    auto al = d.alphabet;
    auto p = length_project(dvpa_to_pda(d), al.id("#"));
    CHECK(pda_accepts(p, {kLen0, kLenMarker, kLen1}));
    CHECK_FALSE(pda_accepts(p, {kLen0, kLenMarker}));
    auto q = length_project(dvpa_to_pda(akbk()), al.id("#"));
    auto g = pda_to_cfg(q);
    for (int k = 0; k <= 5; ++k)
        for (int l = 0; l <= 5; ++l) {
            std::vector<int> x(static_cast<std::size_t>(k), kLen0);
            x.push_back(kLenMarker);
            x.insert(x.end(), static_cast<std::size_t>(l), kLen1);
            CHECK(pda_accepts(q, x) == (k == l));
            CHECK(cfg_derives(g, x) == (k == l));
        }
}

TEST_CASE("parikh images") {
    Cfg eps;
    eps.nonterminals = {"S"};
    eps.terminals = {"0", "1"};
    eps.prods = {{0, {}}};
    CHECK(parikh_image(eps, {0, 1}) == SemilinearSet::zero(2));
    auto al = marked_ab();
    auto k = parikh_of_marked(akbk(), al.id("#"));
    CHECK(k == SemilinearSet::linear({0, 0}, {{1, 1}}));
    CHECK(parikh_of_marked(cmc(), al.id("#")) == SemilinearSet::point({1, 1}));
    auto e = cmc();
    e.finals.assign(e.finals.size(), 0);
    CHECK(parikh_of_marked(e, al.id("#")).is_empty());
}

}  // TEST_SUITE
