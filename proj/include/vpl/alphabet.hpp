#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vpl/errors.hpp"

namespace vpl {

enum class Kind : std::uint8_t { Int, Call, Ret };

using Symbol = int;
using Word = std::vector<Symbol>;

// Symbols are numbered internals first, then calls, then returns; each class is
// sorted by name. This numbering is the symbol order used everywhere.
class VpAlphabet {
public:
    VpAlphabet() = default;
    VpAlphabet(std::vector<std::string> calls, std::vector<std::string> ints,
               std::vector<std::string> rets);

    std::size_t size() const { return names_.size(); }
    Kind kind(Symbol s) const { return kinds_[static_cast<std::size_t>(s)]; }
    const std::string& name(Symbol s) const { return names_[static_cast<std::size_t>(s)]; }
    std::optional<Symbol> find(const std::string& n) const;
    Symbol id(const std::string& n) const;  // throws InvalidInput

    const std::vector<Symbol>& calls() const { return calls_; }
    const std::vector<Symbol>& ints() const { return ints_; }
    const std::vector<Symbol>& rets() const { return rets_; }
    std::size_t num_calls() const { return calls_.size(); }
    std::size_t num_ints() const { return ints_.size(); }
    std::size_t num_rets() const { return rets_.size(); }

    // Position of a symbol inside its own class.
    int class_index(Symbol s) const { return class_index_[static_cast<std::size_t>(s)]; }
    // Index of the pair (a,b) in call-major order.
    int pair_index(Symbol a, Symbol b) const {
        return class_index(a) * static_cast<int>(rets_.size()) + class_index(b);
    }
    std::size_t num_pairs() const { return calls_.size() * rets_.size(); }

    std::vector<std::string> call_names() const;
    std::vector<std::string> int_names() const;
    std::vector<std::string> ret_names() const;

    bool operator==(const VpAlphabet& o) const { return names_ == o.names_ && kinds_ == o.kinds_; }
    bool operator!=(const VpAlphabet& o) const { return !(*this == o); }

private:
    std::vector<std::string> names_;
    std::vector<Kind> kinds_;
    std::vector<int> class_index_;
    std::vector<Symbol> calls_, ints_, rets_;
    std::unordered_map<std::string, Symbol> index_;
};

inline int symbol_height(const VpAlphabet& al, Symbol s) {
    switch (al.kind(s)) {
        case Kind::Call: return 1;
        case Kind::Ret: return -1;
        default: return 0;
    }
}

long delta_height(const VpAlphabet& al, const Word& w);
bool is_well_matched(const VpAlphabet& al, const Word& w);

// Whitespace separated symbol tokens.
Word parse_word(const VpAlphabet& al, const std::string& text);
std::string word_to_string(const VpAlphabet& al, const Word& w);
void check_word(const VpAlphabet& al, const Word& w);

Word concat(const Word& x, const Word& y);
Word concat(std::initializer_list<const Word*> parts);

struct Context {
    Word u, v;
    bool operator==(const Context& o) const { return u == o.u && v == o.v; }
    bool operator<(const Context& o) const {
        if (u.size() + v.size() != o.u.size() + o.v.size())
            return u.size() + v.size() < o.u.size() + o.v.size();
        return u != o.u ? u < o.u : v < o.v;
    }
};

// Throws InvalidInput unless uv is well-matched.
Context make_context(const VpAlphabet& al, Word u, Word v);
// (u,v) o (x,y) = (ux, yv)
Context compose(const Context& a, const Context& b);
Context power(const Context& c, std::size_t k);
std::string context_to_string(const VpAlphabet& al, const Context& c);

// Calls fn on every well-matched word of length <= max_len in length-lexicographic
// order. fn returns false to stop early.
void for_each_well_matched(const VpAlphabet& al, std::size_t max_len,
                           const std::function<bool(const Word&)>& fn);
// Same, for words of exactly the given length.
void for_each_well_matched_of_length(const VpAlphabet& al, std::size_t len,
                                     const std::function<bool(const Word&)>& fn);
std::vector<Word> enumerate_well_matched(const VpAlphabet& al, std::size_t max_len,
                                         const Budgets& budgets = {});

// Calls fn on every context (u,v) with |u| = k and |v| = l, u-major lexicographic.
void for_each_context(const VpAlphabet& al, std::size_t k, std::size_t l,
                      const std::function<bool(const Context&)>& fn);

}  // namespace vpl
