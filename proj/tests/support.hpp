#pragma once

// Brute-force helpers for tests. These deliberately avoid the library's own
// enumeration and evaluation routines.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vpl/alphabet.hpp"
#include "vpl/dvpa.hpp"
#include "vpl/ext_algebra.hpp"

namespace vpl::testing {

inline Word w(const VpAlphabet& al, const std::string& s) { return parse_word(al, s); }

// All words of length <= n over the alphabet, filtered by a height condition.
inline void each_word(const VpAlphabet& al, std::size_t n, const std::function<void(const Word&)>& fn) {
    Word cur;
    std::function<void()> rec = [&] {
        fn(cur);
        if (cur.size() == n) return;
        for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s) {
            cur.push_back(s);
            rec();
            cur.pop_back();
        }
    };
    rec();
}

inline bool naive_well_matched(const VpAlphabet& al, const Word& x) {
    long h = 0;
    for (Symbol s : x) {
        if (al.kind(s) == Kind::Call) ++h;
        if (al.kind(s) == Kind::Ret && --h < 0) return false;
    }
    return h == 0;
}

// Well-matched words of length <= n, generated by the grammar S -> eps | c S | a S b S.
inline std::vector<Word> naive_well_matched_words(const VpAlphabet& al, std::size_t n) {
    std::vector<std::vector<Word>> by_len(n + 1);
    by_len[0].push_back({});
    for (std::size_t len = 1; len <= n; ++len) {
        for (Symbol c : al.ints())
            for (const auto& rest : by_len[len - 1]) {
                Word x{c};
                x.insert(x.end(), rest.begin(), rest.end());
                by_len[len].push_back(x);
            }
        for (std::size_t inner = 0; inner + 2 <= len; ++inner) {
            std::size_t tail = len - 2 - inner;
            for (Symbol a : al.calls())
                for (Symbol b : al.rets())
                    for (const auto& x1 : by_len[inner])
                        for (const auto& x2 : by_len[tail]) {
                            Word x{a};
                            x.insert(x.end(), x1.begin(), x1.end());
                            x.push_back(b);
                            x.insert(x.end(), x2.begin(), x2.end());
                            by_len[len].push_back(x);
                        }
        }
    }
    std::vector<Word> out;
    for (auto& v : by_len) out.insert(out.end(), v.begin(), v.end());
    return out;
}

// Contexts (u, v) with uv well-matched and |u| + |v| <= n, every split of every word.
inline std::vector<Context> naive_contexts(const VpAlphabet& al, std::size_t n) {
    std::set<Context> out;
    for (const auto& x : naive_well_matched_words(al, n))
        for (std::size_t i = 0; i <= x.size(); ++i)
            out.insert(Context{Word(x.begin(), x.begin() + static_cast<long>(i)), Word(x.begin() + static_cast<long>(i), x.end())});
    return {out.begin(), out.end()};
}

inline long height(const VpAlphabet& al, const Word& x) {
    long h = 0;
    for (Symbol s : x) h += al.kind(s) == Kind::Call ? 1 : al.kind(s) == Kind::Ret ? -1 : 0;
    return h;
}

// Direct simulation of a DVPA, independent of dvpa_run.
inline bool naive_accepts(const Dvpa& a, const Word& x) {
    int q = a.initial;
    std::vector<int> st{kBottom};
    for (Symbol s : x) {
        int top = st.back();
        int nq = a.to[(static_cast<std::size_t>(q) * a.alphabet.size() + static_cast<std::size_t>(s)) * a.stack.size() +
                      static_cast<std::size_t>(top)];
        switch (a.alphabet.kind(s)) {
            case Kind::Call:
                st.push_back(a.push[(static_cast<std::size_t>(q) * a.alphabet.size() + static_cast<std::size_t>(s)) *
                                        a.stack.size() +
                                    static_cast<std::size_t>(top)]);
                break;
            case Kind::Ret:
                if (top == kBottom) return false;
                st.pop_back();
                break;
            case Kind::Int: break;
        }
        q = nq;
    }
    return st.size() == 1 && a.finals[static_cast<std::size_t>(q)] != 0;
}

// Nesting depth straight from its inductive definition.
inline int naive_nd(const VpAlphabet& al, const Word& x);

// Splits a well-matched word into its top-level blocks (internal letters or a w b).
inline std::vector<Word> top_blocks(const VpAlphabet& al, const Word& x) {
    std::vector<Word> out;
    std::size_t i = 0;
    while (i < x.size()) {
        if (al.kind(x[i]) == Kind::Int) {
            out.push_back({x[i]});
            ++i;
            continue;
        }
        long h = 0;
        std::size_t j = i;
        do {
            h += al.kind(x[j]) == Kind::Call ? 1 : al.kind(x[j]) == Kind::Ret ? -1 : 0;
            ++j;
        } while (h > 0);
        out.push_back(Word(x.begin() + static_cast<long>(i), x.begin() + static_cast<long>(j)));
        i = j;
    }
    return out;
}

inline int naive_nd(const VpAlphabet& al, const Word& x) {
    if (x.empty()) return 0;
    auto blocks = top_blocks(al, x);
    if (blocks.size() > 1) {
        int m = 0;
        for (const auto& b : blocks) m = std::max(m, naive_nd(al, b));
        return m;
    }
    if (x.size() == 1) return 0;
    Word inner(x.begin() + 1, x.end() - 1);
    int d = naive_nd(al, inner);
    for (std::size_t k = 0; k <= inner.size(); ++k) {
        Word u(inner.begin(), inner.begin() + static_cast<long>(k)), v(inner.begin() + static_cast<long>(k), inner.end());
        if (!naive_well_matched(al, u) || !naive_well_matched(al, v)) continue;
        if (naive_nd(al, u) == d && naive_nd(al, v) == d) return d + 1;
    }
    return d;
}

// psi(ext_{u,v}) as a function on R, evaluated letter by letter from the presentation.
inline int naive_phi(const MorphismPresentation& m, const Word& x);

inline std::vector<int> naive_psi_map(const MorphismPresentation& m, const Context& c) {
    // ext_{u,v}(r) = phi(u w v) for any w with phi(w) = r; computed by
    // stepping through u from the right and v from the left.
    const auto& A = m.alg;
    const auto& al = m.alphabet;
    std::vector<int> out(static_cast<std::size_t>(A.r_size));
    for (int r = 0; r < A.r_size; ++r) {
        // Stack of pending (left product, call) frames while reading u.
        std::vector<std::pair<int, Symbol>> frames;
        int acc = A.r_one;
        for (Symbol s : c.u) {
            if (al.kind(s) == Kind::Int) acc = A.mul(acc, m.phi_int[static_cast<std::size_t>(al.class_index(s))]);
            else if (al.kind(s) == Kind::Call) {
                frames.push_back({acc, s});
                acc = A.r_one;
            } else {
                // a return matched inside u: only reachable if u itself has a
                // well-matched block, handled by the frame on top.
                auto [left, a] = frames.back();
                frames.pop_back();
                int inner = A.o[static_cast<std::size_t>(m.psi[static_cast<std::size_t>(al.pair_index(a, s))])]
                               [static_cast<std::size_t>(acc)];
                acc = A.mul(left, inner);
            }
        }
        acc = A.mul(acc, r);
        for (Symbol s : c.v) {
            if (al.kind(s) == Kind::Int) acc = A.mul(acc, m.phi_int[static_cast<std::size_t>(al.class_index(s))]);
            else if (al.kind(s) == Kind::Call) {
                frames.push_back({acc, s});
                acc = A.r_one;
            } else {
                auto [left, a] = frames.back();
                frames.pop_back();
                int inner = A.o[static_cast<std::size_t>(m.psi[static_cast<std::size_t>(al.pair_index(a, s))])]
                               [static_cast<std::size_t>(acc)];
                acc = A.mul(left, inner);
            }
        }
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

inline int naive_phi(const MorphismPresentation& m, const Word& x) {
    return naive_psi_map(m, Context{x, {}})[static_cast<std::size_t>(m.alg.r_one)];
}

inline int o_index(const ExtAlgebra& A, const std::vector<int>& f) {
    for (std::size_t i = 0; i < A.o.size(); ++i)
        if (A.o[i] == f) return static_cast<int>(i);
    return -1;
}

}  // namespace vpl::testing
