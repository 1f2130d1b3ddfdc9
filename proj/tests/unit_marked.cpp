#include "doctest.h"
#include "support.hpp"
#include "vpl/fixtures.hpp"
#include "vpl/marked.hpp"
#include "vpl/parikh.hpp"

using namespace vpl;
using vpl::testing::w;

namespace {

struct L12 {
    SyntacticResult s = syntactic_of_dvpa(fixtures::l12());
    int e_ab1() const {
        const auto& al = s.m.alphabet;
        return eval_psi(s.m, make_context(al, w(al, "a"), w(al, "b1")));
    }
};

bool accepts(const SyntacticResult& r, const Word& x) { return r.accepting[static_cast<std::size_t>(eval_phi(r.m, x))] != 0; }

}  // namespace

TEST_SUITE("aux-languages") {

TEST_CASE("alphabets") {
    auto al = fixtures::l12_alphabet();
    auto ma = marked_alphabet(al);
    CHECK(ma.al.name(ma.marker) == "#");
    CHECK(ma.al.kind(ma.marker) == Kind::Int);
    auto ba = barred_alphabet(al);
    CHECK(ba.al.kind(ba.bar[static_cast<std::size_t>(al.id("a"))]) == Kind::Ret);
    CHECK(ba.al.kind(ba.bar[static_cast<std::size_t>(al.id("b1"))]) == Kind::Call);
    CHECK(word_to_string(ba.al, ba.barred_reverse(w(al, "a c"))) == "^c ^a");
    VpAlphabet clash({"a"}, {"#"}, {"b"});
    CHECK(marked_alphabet(clash).al.name(marked_alphabet(clash).marker) != "#");
}

TEST_CASE("height at the marker") {
    auto ma = marked_alphabet(fixtures::l12_alphabet());
    auto h = height_positive_dvpa(ma.al, ma.marker);
    CHECK(dvpa_accepts(h, w(ma.al, "a # b1")));
    CHECK_FALSE(dvpa_accepts(h, w(ma.al, "# a b1")));
    CHECK_FALSE(dvpa_accepts(h, w(ma.al, "a # # b1")));
    CHECK_FALSE(dvpa_accepts(h, w(ma.al, "a b1")));
}

TEST_CASE("L_e") {
    L12 l;
    LeFamily f(l.s.m);
    const auto& al = f.alphabet().al;
    const auto& A = l.s.m.alg;
    CHECK(f.eval(w(al, "#")) == A.r_size + A.o_one);
    int e = l.e_ab1();
    auto le = f.build_Le(e);
    CHECK(accepts(le, w(al, "a # b1")));
    CHECK(accepts(le, w(al, "a c # b2")));
    CHECK_FALSE(accepts(le, w(al, "#")));
    CHECK_FALSE(accepts(le, w(al, "a b1")));
    for (std::size_t g = 0; g < A.o.size(); ++g) CHECK_FALSE(accepts(f.build_Le(static_cast<int>(g)), w(al, "# #")));
    CHECK(f.parikh_Le(A.o_one) == SemilinearSet::point({0, 0}));
    CHECK(f.parikh_Le(A.o_one, true).is_empty());
    auto d = build_Le_up(l.s.m, e);
    CHECK(dvpa_accepts(d, w(al, "a # b1")));
    CHECK_FALSE(dvpa_accepts(d, w(al, "#")));
    CHECK_FALSE(dvpa_accepts(build_Le_dvpa(l.s.m, e), w(al, "c")));
}

TEST_CASE("L_e agrees with psi") {
    L12 l;
    LeFamily f(l.s.m);
    const auto& ma = f.alphabet();
    auto base = l.s.m.alphabet;
    for (const auto& c : testing::naive_contexts(base, 8)) {
        Word x = ma.lift(c.u);
        x.push_back(ma.marker);
        auto v = ma.lift(c.v);
        x.insert(x.end(), v.begin(), v.end());
        int got = f.eval(x);
        CHECK(got == l.s.m.alg.r_size + eval_psi(l.s.m, c));
    }
}

TEST_CASE("K_e") {
    L12 l;
    KeFamily f(l.s.m);
    const auto& al = f.alphabet().al;
    const auto& A = l.s.m.alg;
    int e = l.e_ab1();
    auto ke = f.build_Ke(e);
    CHECK(accepts(ke, w(al, "a # ^a")));
    CHECK(accepts(ke, w(al, "a c # ^c ^a")));
    CHECK_FALSE(accepts(ke, w(al, "a # ^c ^a")));
    for (int g = 0; g < static_cast<int>(A.o.size()); ++g) {
        bool rho = false;
        for (int r = 0; r < A.r_size; ++r) rho = rho || A.rho(r) == g;
        CHECK(accepts(f.build_Ke(g), w(al, "#")) == rho);
    }
    auto up = build_Ke_up(l.s.m, e);
    CHECK(dvpa_accepts(up, w(al, "a # ^a")));
    CHECK_FALSE(dvpa_accepts(up, w(al, "a # ^a ^c")));
    CHECK_FALSE(dvpa_accepts(up, w(al, "a # b1")));
    CHECK_FALSE(dvpa_accepts(up, w(al, "a # ^b1")));
    CHECK_FALSE(dvpa_accepts(up, w(al, "#")));
}

TEST_CASE("M_e") {
    L12 l;
    LeFamily f(l.s.m);
    const auto& al = f.alphabet().al;
    int e = l.e_ab1();
    auto me = build_Me(l.s.m, e);
    CHECK(dvpa_accepts(me, w(al, "a # b1")));
    CHECK(dvpa_accepts(me, w(al, "a c # b2")));
    CHECK_FALSE(dvpa_accepts(me, w(al, "# a b1")));
    CHECK(f.parikh_Me(l.s.m.alg.o_one).is_empty());
    CHECK(dvpa_emptiness(build_Me(l.s.m, l.s.m.alg.o_one)).empty);
}

TEST_CASE("length images") {
    L12 l;
    LeFamily f(l.s.m);
    auto p = f.parikh_Le(l.e_ab1(), true);
    CHECK(p.contains({1, 1}));
    CHECK(p.contains({2, 1}));
    CHECK_FALSE(p.contains({1, 2}));
    auto d = build_Le_up(l.s.m, l.e_ab1());
    CHECK(parikh_of_marked(d, f.alphabet().marker).members_upto(20) == p.members_upto(20));
}

TEST_CASE("closure budget") {
    L12 l;
    Budgets b;
    b.closure = 8;
    CHECK_THROWS_AS(KeFamily(l.s.m, b), BudgetExceeded);
}

}  // TEST_SUITE
