#include "doctest.h"
#include "support.hpp"
#include "vpl/classifier.hpp"
#include "vpl/fixtures.hpp"

using namespace vpl;
using vpl::testing::w;

namespace {

// Internal letters 0 and 1; accepts words with a multiple of n ones.
Dvpa mod_n(int n) {
    VpAlphabet al({}, {"0", "1"}, {});
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
    Dvpa d(al, names, {kBottomName});
    for (int q = 0; q < n; ++q) {
        d.set(q, al.id("0"), 0, q);
        d.set(q, al.id("1"), 0, (q + 1) % n);
    }
    d.finals[0] = 1;
    return d;
}

// S -> a S b1 | d S c b2 | eps: the contexts (a,b1) and (d, c b2) have |u| = |u'|.
Vvpg right_grammar() {
    Vvpg g;
    g.alphabet = VpAlphabet({"a", "d"}, {"c"}, {"b1", "b2"});
    const auto& al = g.alphabet;
    g.nonterminals = {"S"};
    g.prods.push_back({0, w(al, "a"), 0, w(al, "b1")});
    g.prods.push_back({0, w(al, "d"), 0, w(al, "c b2")});
    g.validate();
    return g;
}

struct Fixture {
    SyntacticResult s;
    Analysis an;
    explicit Fixture(const Dvpa& d) : s(syntactic_of_dvpa(d)), an(s.m, s.accepting) {}
    int psi(const std::string& u, const std::string& v) const {
        const auto& al = s.m.alphabet;
        return eval_psi(an.presentation(), make_context(al, w(al, u), w(al, v)));
    }
};

}  // namespace

TEST_SUITE("classifier") {

TEST_CASE("weak length synchronicity") {
    Fixture l(fixtures::l12());
    CHECK(decide_weak_ls(l.an).ok);
    Fixture d(fixtures::dyck1());
    auto r = decide_weak_ls(d.an);
    CHECK_FALSE(r.ok);
    REQUIRE(r.contexts);
    const auto& c = *r.contexts;
    CHECK((c.first.v == c.second.v || c.first.u == c.second.u));
    CHECK(c.first.u.size() + c.first.v.size() != c.second.u.size() + c.second.v.size());
    VpAlphabet ints({}, {"c"}, {});
    Dvpa all(ints, {"q"}, {kBottomName});
    all.set(0, 0, 0, 0);
    all.finals[0] = 1;
    Fixture t(all);
    CHECK(decide_weak_ls(t.an).ok);
}

TEST_CASE("length synchronicity") {
    Fixture l(fixtures::l12());
    auto r = decide_ls(l.an);
    CHECK_FALSE(r.ok);
    CHECK(r.e == l.psi("a", "b1"));
    CHECK(r.quad == Quad{1, 1, 2, 1});
    CHECK(decide_ls(Fixture(fixtures::anbn()).an).ok);
    CHECK_FALSE(decide_ls(Fixture(fixtures::k_even()).an).ok);
}

TEST_CASE("quasi aperiodicity") {
    CHECK(decide_quasi_aperiodic(Fixture(fixtures::l12()).an).ok);
    Fixture m(fixtures::mod2());
    auto q = decide_quasi_aperiodic(m.an);
    CHECK_FALSE(q.ok);
    CHECK(q.group.size() == 2);
    CHECK(q.kl == Vec{1, 0});
    CHECK(quasi_aperiodic_by_subsets(m.an).ok == q.ok);
    CHECK(decide_quasi_aperiodic(Fixture(fixtures::dyck1()).an).ok);
}

TEST_CASE("mod witnesses") {
    Fixture m(fixtures::mod2());
    auto w2 = mod_m_witness(m.an, decide_quasi_aperiodic(m.an));
    CHECK(w2.m == 2);
    CHECK(eval_psi(m.an.presentation(), w2.generator_ctx) == w2.generator);
    CHECK(eval_psi(m.an.presentation(), w2.identity_ctx) == w2.identity);
    CHECK(w2.identity_ctx.u.size() == w2.generator_ctx.u.size());
    Fixture six(mod_n(6));
    CHECK(mod_m_witness(six.an, decide_quasi_aperiodic(six.an)).m == 2);
    Fixture three(mod_n(3));
    CHECK(mod_m_witness(three.an, decide_quasi_aperiodic(three.an)).m == 3);
}

TEST_CASE("the set Z") {
    Fixture l(fixtures::l12());
    auto z = compute_Z(l.an);
    CHECK(std::find(z.begin(), z.end(), l.psi("a", "b1")) != z.end());
    CHECK(std::find(z.begin(), z.end(), l.an.presentation().alg.o_one) == z.end());
    CHECK(compute_Z(Fixture(fixtures::anbn()).an).empty());
}

TEST_CASE("piece sets") {
    Fixture l(fixtures::l12());
    const auto& m = l.an.presentation();
    auto p = compute_piece_sets(l.an, l.psi("a", "b1"));
    int eps = eval_phi(m, {}), c = eval_phi(m, w(m.alphabet, "c"));
    CHECK(p.length.at(eps) == 0);
    CHECK(p.words.at(eps) == std::vector<Word>{Word{}});
    CHECK(p.length.at(c) == 1);
    for (const auto& [cls, words] : p.words)
        for (const auto& x : words) {
            CHECK(eval_phi(m, x) == cls);
            CHECK(static_cast<long>(x.size()) == p.length.at(cls));
        }
}

TEST_CASE("tagging and grammars") {
    Fixture l(fixtures::l12());
    const auto& al = l.an.presentation().alphabet;
    auto t = tagged_alphabet(al);
    auto c1 = make_context(al, w(al, "a"), w(al, "b1"));
    auto c2 = make_context(al, w(al, "a c"), w(al, "b2"));
    CHECK(word_to_string(t.al, tag_context(t, c1)) == "a b1");
    CHECK(word_to_string(t.al, tag_context(t, c2)) == "a ~c b2");
    CHECK(untag_word(t, tag_context(t, c2)) == c2);
    int e = l.psi("a", "b1");
    auto g = build_Ge(l.an, e, compute_piece_sets(l.an, e), t);
    CHECK(vvpg_derives(g, {}));
    CHECK(vvpg_derives(g, tag_context(t, c1)));
    CHECK(vvpg_derives(g, tag_context(t, c2)));
    CHECK(verify_intermediate(g).intermediate());
}

TEST_CASE("the pair (k, l)") {
    Fixture l(fixtures::l12());
    int e = l.psi("a", "b1");
    auto kl = compute_kl(l.an, e, Quad{1, 1, 2, 1});
    CHECK(kl.k == 3);
    CHECK(kl.l == 4);
    CHECK(kl.formula_case == 1);
    auto r = classify(nvpa_determinize(vvpg_to_nvpa(right_grammar())));
    CHECK(r.verdict == Verdict::Intermediate);
    REQUIRE(r.kl);
    REQUIRE(r.contexts);
    CHECK(r.diag.kl_case == 2);
    const auto& q = r.contexts->lengths;
    CHECK(r.kl->first == 2 * q[1] + q[3]);
    CHECK(r.kl->second == 3 * q[1]);
    for (const auto& f : fixtures::all()) {
        auto x = classify(f.dvpa);
        if (x.kl) {
            CHECK(x.kl->first != x.kl->second);
            CHECK(x.kl->first >= 1);
            CHECK(x.kl->second >= 1);
        }
    }
}

TEST_CASE("context search") {
    Fixture l(fixtures::l12());
    auto c = find_context(l.an.presentation(), 2, 1, l.psi("a", "b1"), true);
    REQUIRE(c);
    CHECK(word_to_string(l.s.m.alphabet, c->u) == "a c");
    CHECK_FALSE(find_context(l.an.presentation(), 1, 2, l.psi("a", "b1"), true));
}

TEST_CASE("intermediate check") {
    CHECK(verify_intermediate(fixtures::l12_grammar()).intermediate());
    Vvpg eps;
    eps.alphabet = fixtures::l12_alphabet();
    eps.nonterminals = {"S"};
    auto v = verify_intermediate(eps);
    CHECK_FALSE(v.intermediate());
    CHECK(v.ls);
}

TEST_CASE("verdicts") {
    CHECK(classify(fixtures::l12()).verdict == Verdict::Intermediate);
    auto d = classify(fixtures::dyck1());
    CHECK(d.verdict == Verdict::Tc0Hard);
    CHECK(d.contexts);
    auto m = classify(fixtures::mod2());
    CHECK(m.verdict == Verdict::ModHard);
    CHECK(m.mod_m == 2);
    CHECK(classify(fixtures::anbn()).verdict == Verdict::AC0);
    CHECK(verdict_name(Verdict::ModHard) == "MOD_HARD");
}

TEST_CASE("closure budget") {
    ClassifyOptions opt;
    opt.budgets.closure = 4;
    CHECK_THROWS_AS(classify(fixtures::l12(), opt), BudgetExceeded);
}

}  // TEST_SUITE
