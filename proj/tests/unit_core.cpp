#include "doctest.h"
#include "support.hpp"
#include "vpl/fixtures.hpp"

using namespace vpl;
using vpl::testing::w;

TEST_SUITE("vpa-core") {

TEST_CASE("delta height") {
    auto al = fixtures::l12_alphabet();
    CHECK(delta_height(al, {}) == 0);
    CHECK(delta_height(al, w(al, "a c b1")) == 0);
    CHECK(delta_height(al, w(al, "a c a")) == 2);
}

TEST_CASE("well matched") {
    auto al = fixtures::l12_alphabet();
    CHECK(is_well_matched(al, {}));
    CHECK(is_well_matched(al, w(al, "a b1")));
    CHECK_FALSE(is_well_matched(al, w(al, "b1 a")));
    CHECK(is_well_matched(al, w(al, "a c a b1 b2")));
}

TEST_CASE("word parsing") {
    auto al = fixtures::l12_alphabet();
    CHECK(w(al, "  a   b1 ").size() == 2);
    CHECK(word_to_string(al, w(al, "a c b2")) == "a c b2");
    CHECK_THROWS_AS(parse_word(al, "a b3"), InvalidInput);
}

TEST_CASE("runs") {
    auto d = fixtures::dyck1();
    auto r = dvpa_run(d, {});
    CHECK(r.state == d.initial);
    CHECK(r.stack == std::vector<int>{kBottom});
    CHECK(dvpa_accepts(d, w(d.alphabet, "a b")));
    auto r2 = dvpa_run(d, w(d.alphabet, "a a b"));
    CHECK(r2.stack.size() == 2);
    CHECK_FALSE(dvpa_accepts(d, w(d.alphabet, "a a b")));
    CHECK_FALSE(dvpa_accepts(d, w(d.alphabet, "b")));
}

TEST_CASE("boolean operations") {
    auto dy = fixtures::dyck1();
    auto ab = fixtures::anbn();
    CHECK(dvpa_equivalence(dvpa_intersect(dy, dy), dy).equal);
    auto cc = dvpa_complement(dvpa_complement(dy));
    testing::each_word(dy.alphabet, 8, [&](const Word& x) { CHECK(dvpa_accepts(cc, x) == dvpa_accepts(dy, x)); });
    auto i = dvpa_intersect(dy, ab);
    testing::each_word(dy.alphabet, 8, [&](const Word& x) { CHECK(dvpa_accepts(i, x) == testing::naive_accepts(ab, x)); });
    auto u = dvpa_union(fixtures::anbn(true), fixtures::anbn());
    CHECK(dvpa_equivalence(u, ab).equal);
}

TEST_CASE("emptiness") {
    auto d = fixtures::dyck1();
    d.finals.assign(d.finals.size(), 0);
    CHECK(dvpa_emptiness(d).empty);
    auto e = dvpa_emptiness(fixtures::dyck1());
    CHECK_FALSE(e.empty);
    CHECK(e.witness->empty());
    auto p = dvpa_emptiness(fixtures::anbn(true));
    REQUIRE(p.witness);
    CHECK(word_to_string(fixtures::dyck1().alphabet, *p.witness) == "a b");
}

TEST_CASE("equivalence") {
    auto dy = fixtures::dyck1();
    CHECK(dvpa_equivalence(dy, dy).equal);
    auto r = dvpa_equivalence(dy, fixtures::anbn());
    CHECK_FALSE(r.equal);
    REQUIRE(r.witness);
    CHECK(word_to_string(dy.alphabet, *r.witness) == "a b a b");
}

TEST_CASE("trim keeps the language") {
    for (const auto& f : fixtures::all()) {
        auto t = dvpa_trim(f.dvpa);
        CHECK(t.num_states() <= f.dvpa.num_states());
        CHECK(dvpa_equivalence(t, f.dvpa).equal);
    }
}

TEST_CASE("determinization") {
    auto dy = fixtures::dyck1();
    Nvpa n;
    n.alphabet = dy.alphabet;
    n.states = dy.states;
    n.stack = dy.stack;
    n.initials = {dy.initial};
    n.finals = dy.finals;
    for (int q = 0; q < static_cast<int>(dy.num_states()); ++q)
        for (Symbol s = 0; s < static_cast<Symbol>(dy.alphabet.size()); ++s)
            for (int g = 0; g < static_cast<int>(dy.num_stack()); ++g)
                n.trans.push_back({q, s, g, dy.next(q, s, g), dy.pushed(q, s, g)});
    CHECK(dvpa_equivalence(nvpa_determinize(n), dy).equal);

    // a b1 | a b2 with two branches guessed at the call.
    auto al = fixtures::l12_alphabet();
    Nvpa two;
    two.alphabet = al;
    two.states = {"s", "x", "y", "f"};
    two.stack = {kBottomName, "X", "Y"};
    two.initials = {0};
    two.finals = {0, 0, 0, 1};
    Symbol a = al.id("a"), b1 = al.id("b1"), b2 = al.id("b2");
    two.trans = {{0, a, -1, 1, 1}, {0, a, -1, 2, 2}, {1, b1, 1, 3, -1}, {2, b2, 2, 3, -1}};
    auto d = nvpa_determinize(two);
    testing::each_word(al, 6, [&](const Word& x) { CHECK(dvpa_accepts(d, x) == nvpa_accepts(two, x)); });
    CHECK(dvpa_accepts(d, w(al, "a b1")));
    CHECK(dvpa_accepts(d, w(al, "a b2")));
    CHECK_FALSE(dvpa_accepts(d, w(al, "a c b2")));

    auto g = nvpa_determinize(vvpg_to_nvpa(fixtures::l12_grammar()));
    CHECK(dvpa_accepts(g, w(al, "a b1")));
    CHECK(dvpa_accepts(g, w(al, "a c a b1 b2")));
    CHECK_FALSE(dvpa_accepts(g, w(al, "a b2")));
    CHECK(dvpa_equivalence(g, fixtures::l12()).equal);
}

TEST_CASE("grammars") {
    auto al = fixtures::l12_alphabet();
    Vvpg eps;
    eps.alphabet = al;
    eps.nonterminals = {"S"};
    testing::each_word(al, 4, [&](const Word& x) { CHECK(vvpg_derives(eps, x) == x.empty()); });

    auto g = fixtures::l12_grammar();
    CHECK(vvpg_derives(g, w(al, "a a c b2 b1")));
    CHECK_FALSE(vvpg_derives(g, w(al, "a a c b1 b2")));

    // K: even number of (ac, b2) steps, by hand derivation.
    auto k = fixtures::k_grammar();
    CHECK(vvpg_derives(k, w(al, "a c a c b2 b2")));
    CHECK(vvpg_derives(k, w(al, "a c a a c b2 b1 b2")));
    CHECK_FALSE(vvpg_derives(k, w(al, "a c a b1 b2")));
    testing::each_word(al, 8, [&](const Word& x) {
        CHECK(vvpg_derives(k, x) == testing::naive_accepts(fixtures::k_even(), x));
    });
    CHECK(dvpa_equivalence(nvpa_determinize(vvpg_to_nvpa(k)), fixtures::k_even()).equal);
}

TEST_CASE("grammar shape is enforced") {
    auto al = fixtures::l12_alphabet();
    Vvpg g;
    g.alphabet = al;
    g.nonterminals = {"S"};
    g.prods.push_back({0, w(al, "c"), 0, w(al, "b1")});
    CHECK_THROWS_AS(g.validate(), InvalidInput);
}

TEST_CASE("visibly counter automata") {
    VpAlphabet al({"a"}, {}, {"b"});
    Vca all;
    all.alphabet = al;
    all.states = {"q"};
    all.finals = {1};
    all.threshold = 0;
    all.delta = {{0, 0}};
    auto d = vca_to_dvpa(all);
    testing::each_word(al, 8, [&](const Word& x) {
        CHECK(vca_accepts(all, x) == testing::naive_well_matched(al, x));
        CHECK(dvpa_accepts(d, x) == testing::naive_well_matched(al, x));
    });
    CHECK(dvpa_equivalence(d, fixtures::dyck1()).equal);
    CHECK(dvpa_equivalence(vca_to_dvpa(fixtures::anbn_vca()), fixtures::anbn()).equal);
    all.finals = {0};
    CHECK(dvpa_emptiness(vca_to_dvpa(all)).empty);
}

TEST_CASE("threshold levels") {
    // c is allowed only at height 0.
    VpAlphabet al({"a"}, {"c"}, {"b"});
    Vca v;
    v.alphabet = al;
    v.states = {"ok", "bad"};
    v.initial = 0;
    v.finals = {1, 0};
    v.threshold = 1;
    Symbol a = al.id("a"), c = al.id("c"), b = al.id("b");
    auto table = [&](bool level0) {
        std::vector<int> d(2 * al.size(), 1);
        auto at = [&](int q, Symbol s) -> int& { return d[static_cast<std::size_t>(q) * al.size() + static_cast<std::size_t>(s)]; };
        at(0, a) = 0;
        at(0, b) = 0;
        at(0, c) = level0 ? 0 : 1;
        return d;
    };
    v.delta = {table(true), table(false)};
    v.validate();
    auto d = vca_to_dvpa(v);
    CHECK(vca_accepts(v, w(al, "c a b c")));
    CHECK_FALSE(vca_accepts(v, w(al, "a c b")));
    testing::each_word(al, 7, [&](const Word& x) { CHECK(dvpa_accepts(d, x) == vca_accepts(v, x)); });
}

TEST_CASE("enumeration") {
    auto al = fixtures::l12_alphabet();
    auto zero = enumerate_well_matched(al, 0);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].empty());
    auto two = enumerate_well_matched(al, 2);
    std::vector<std::string> got;
    for (const auto& x : two) got.push_back(word_to_string(al, x));
    CHECK(got == std::vector<std::string>{"", "c", "c c", "a b1", "a b2"});

    VpAlphabet dy({"a"}, {}, {"b"});
    std::vector<int> counts(7, 0);
    for (const auto& x : enumerate_well_matched(dy, 6)) ++counts[x.size()];
    CHECK(counts == std::vector<int>{1, 0, 1, 0, 2, 0, 5});
    CHECK(enumerate_well_matched(al, 8).size() == testing::naive_well_matched_words(al, 8).size());
}

TEST_CASE("enumeration budget") {
    auto al = fixtures::l12_alphabet();
    Budgets b;
    b.enum_len = 3;
    CHECK_THROWS_AS(enumerate_well_matched(al, 4, b), BudgetExceeded);
}

TEST_CASE("contexts") {
    auto al = fixtures::l12_alphabet();
    auto c = make_context(al, w(al, "a c"), w(al, "b2"));
    CHECK(context_to_string(al, c) == "(a c, b2)");
    CHECK_THROWS_AS(make_context(al, w(al, "a"), w(al, "a")), InvalidInput);
    auto c2 = compose(c, make_context(al, w(al, "a"), w(al, "b1")));
    CHECK(word_to_string(al, c2.u) == "a c a");
    CHECK(word_to_string(al, c2.v) == "b1 b2");
    CHECK(power(c, 3).u.size() == 6);
    std::size_t n = 0;
    for_each_context(al, 2, 1, [&](const Context& x) {
        CHECK(testing::naive_well_matched(al, concat(x.u, x.v)));
        ++n;
        return true;
    });
    std::size_t expect = 0;
    for (const auto& x : testing::naive_contexts(al, 3))
        if (x.u.size() == 2 && x.v.size() == 1) ++expect;
    CHECK(n == expect);
}

}  // TEST_SUITE
