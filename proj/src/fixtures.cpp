#include "vpl/fixtures.hpp"

namespace vpl::fixtures {

namespace {

// Every transition to `dead`; calls push the first non-bottom symbol.
void fill_dead(Dvpa& d, int dead) {
    const auto& al = d.alphabet;
    int push = d.num_stack() > 1 ? 1 : -1;
    for (int q = 0; q < static_cast<int>(d.num_states()); ++q)
        for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s)
            for (int g = 0; g < static_cast<int>(d.num_stack()); ++g)
                d.set(q, s, g, dead, al.kind(s) == Kind::Call ? push : -1);
}

}  // namespace

VpAlphabet l12_alphabet() { return VpAlphabet({"a"}, {"c"}, {"b1", "b2"}); }

Dvpa l12() {
    VpAlphabet al = l12_alphabet();
    enum { Q0, A0, A1, R0, R1, FIN, D };
    Dvpa d(al, {"q0", "A0", "A1", "R0", "R1", "fin", "dead"}, {kBottomName, "N", "T0", "T1"});
    const int N = 1, T0 = 2, T1 = 3;
    fill_dead(d, D);
    Symbol a = al.id("a"), c = al.id("c"), b1 = al.id("b1"), b2 = al.id("b2");
    auto all_tops = [&](int q, Symbol s, int to, int push = -1) {
        for (int g = 0; g < static_cast<int>(d.num_stack()); ++g) d.set(q, s, g, to, push);
    };
    auto by_top = [&](int q, Symbol s) {
        d.set(q, s, N, FIN);
        d.set(q, s, T0, R0);
        d.set(q, s, T1, R1);
    };
    all_tops(Q0, a, A0, N);
    all_tops(A0, a, A0, T0);
    all_tops(A0, c, A1);
    by_top(A0, b1);
    all_tops(A1, a, A0, T1);
    by_top(A1, b2);
    by_top(R0, b1);
    by_top(R1, b2);
    d.finals[Q0] = 1;
    d.finals[FIN] = 1;
    d.initial = Q0;
    d.validate();
    return d;
}

Vvpg l12_grammar() {
    Vvpg g;
    g.alphabet = l12_alphabet();
    const auto& al = g.alphabet;
    g.nonterminals = {"S"};
    g.start = 0;
    g.prods.push_back({0, {al.id("a")}, 0, {al.id("b1")}});
    g.prods.push_back({0, {al.id("a"), al.id("c")}, 0, {al.id("b2")}});
    g.validate();
    return g;
}

Dvpa k_even() {
    VpAlphabet al = l12_alphabet();
    Dvpa parity(al, {"even", "odd"}, {kBottomName, "X"});
    Symbol c = al.id("c");
    for (int q = 0; q < 2; ++q)
        for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s)
            for (int g = 0; g < 2; ++g) {
                switch (al.kind(s)) {
                    case Kind::Int: parity.set(q, s, g, s == c ? 1 - q : q); break;
                    case Kind::Call: parity.set(q, s, g, q, 1); break;
                    case Kind::Ret: parity.set(q, s, g, q); break;
                }
            }
    parity.finals[0] = 1;
    parity.validate();
    return dvpa_intersect(l12(), parity);
}

Vvpg k_grammar() {
    Vvpg g;
    g.alphabet = l12_alphabet();
    const auto& al = g.alphabet;
    g.nonterminals = {"S", "T"};
    g.start = 0;
    Symbol a = al.id("a"), c = al.id("c"), b1 = al.id("b1"), b2 = al.id("b2");
    g.prods.push_back({0, {a}, 0, {b1}});
    g.prods.push_back({0, {a, c}, 1, {b2}});
    g.prods.push_back({1, {a}, 1, {b1}});
    g.prods.push_back({1, {a, c}, 0, {b2}});
    g.validate();
    return g;
}

Dvpa dyck1() {
    VpAlphabet al({"a"}, {}, {"b"});
    Dvpa d(al, {"q"}, {kBottomName, "X"});
    Symbol a = al.id("a"), b = al.id("b");
    for (int g = 0; g < 2; ++g) {
        d.set(0, a, g, 0, 1);
        d.set(0, b, g, 0);
    }
    d.finals[0] = 1;
    d.validate();
    return d;
}

Dvpa anbn(bool positive) {
    VpAlphabet al({"a"}, {}, {"b"});
    enum { UP, DOWN, D };
    Dvpa d(al, {"up", "down", "dead"}, {kBottomName, "X"});
    fill_dead(d, D);
    Symbol a = al.id("a"), b = al.id("b");
    for (int g = 0; g < 2; ++g) {
        d.set(UP, a, g, UP, 1);
        d.set(UP, b, g, DOWN);
        d.set(DOWN, b, g, DOWN);
    }
    d.finals[UP] = positive ? 0 : 1;
    d.finals[DOWN] = 1;
    d.validate();
    return d;
}

Vca anbn_vca() {
    Vca v;
    v.alphabet = VpAlphabet({"a"}, {}, {"b"});
    v.states = {"up", "down", "dead"};
    v.initial = 0;
    v.finals = {1, 1, 0};
    v.threshold = 0;
    Symbol a = v.alphabet.id("a"), b = v.alphabet.id("b");
    std::vector<int> d(3 * v.alphabet.size(), 2);
    auto at = [&](int q, Symbol s) -> int& { return d[static_cast<std::size_t>(q) * v.alphabet.size() + static_cast<std::size_t>(s)]; };
    at(0, a) = 0;
    at(0, b) = 1;
    at(1, b) = 1;
    v.delta = {d};
    v.validate();
    return v;
}

Dvpa mod2() {
    VpAlphabet al({}, {"0", "1"}, {});
    Dvpa d(al, {"even", "odd"}, {kBottomName});
    Symbol zero = al.id("0"), one = al.id("1");
    for (int q = 0; q < 2; ++q) {
        d.set(q, zero, 0, q);
        d.set(q, one, 0, 1 - q);
    }
    d.finals[0] = 1;
    d.validate();
    return d;
}

std::vector<Named> all() {
    return {{"l12", l12()}, {"k", k_even()}, {"dyck1", dyck1()}, {"anbn", anbn()}, {"mod2", mod2()}};
}

}  // namespace vpl::fixtures
