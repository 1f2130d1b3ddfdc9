#include "vpl/alphabet.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace vpl {

VpAlphabet::VpAlphabet(std::vector<std::string> calls, std::vector<std::string> ints,
                       std::vector<std::string> rets) {
    std::sort(calls.begin(), calls.end());
    std::sort(ints.begin(), ints.end());
    std::sort(rets.begin(), rets.end());
    auto add = [&](const std::vector<std::string>& names, Kind k, std::vector<Symbol>& cls) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            const auto& n = names[i];
            if (n.empty() || n.find_first_of(" \t\r\n") != std::string::npos)
                throw InvalidInput("invalid symbol name '" + n + "'");
            if (index_.count(n)) throw InvalidInput("duplicate symbol '" + n + "'");
            Symbol s = static_cast<Symbol>(names_.size());
            index_[n] = s;
            names_.push_back(n);
            kinds_.push_back(k);
            class_index_.push_back(static_cast<int>(i));
            cls.push_back(s);
        }
    };
    add(ints, Kind::Int, ints_);
    add(calls, Kind::Call, calls_);
    add(rets, Kind::Ret, rets_);
    if (names_.empty()) throw InvalidInput("empty alphabet");
}

std::optional<Symbol> VpAlphabet::find(const std::string& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Symbol VpAlphabet::id(const std::string& n) const {
    auto s = find(n);
    if (!s) throw InvalidInput("unknown symbol '" + n + "'");
    return *s;
}

static std::vector<std::string> names_of(const VpAlphabet& al, const std::vector<Symbol>& v) {
    std::vector<std::string> out;
    for (Symbol s : v) out.push_back(al.name(s));
    return out;
}

std::vector<std::string> VpAlphabet::call_names() const { return names_of(*this, calls_); }
std::vector<std::string> VpAlphabet::int_names() const { return names_of(*this, ints_); }
std::vector<std::string> VpAlphabet::ret_names() const { return names_of(*this, rets_); }

long delta_height(const VpAlphabet& al, const Word& w) {
    long h = 0;
    for (Symbol s : w) h += symbol_height(al, s);
    return h;
}

bool is_well_matched(const VpAlphabet& al, const Word& w) {
    long h = 0;
    for (Symbol s : w) {
        h += symbol_height(al, s);
        if (h < 0) return false;
    }
    return h == 0;
}

void check_word(const VpAlphabet& al, const Word& w) {
    for (Symbol s : w)
        if (s < 0 || static_cast<std::size_t>(s) >= al.size())
            throw InvalidInput("symbol id out of range");
}

Word parse_word(const VpAlphabet& al, const std::string& text) {
    std::istringstream in(text);
    Word w;
    std::string tok;
    while (in >> tok) w.push_back(al.id(tok));
    return w;
}

std::string word_to_string(const VpAlphabet& al, const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += al.name(w[i]);
    }
    return out;
}

Word concat(const Word& x, const Word& y) {
    Word r = x;
    r.insert(r.end(), y.begin(), y.end());
    return r;
}

Word concat(std::initializer_list<const Word*> parts) {
    Word r;
    for (const Word* p : parts) r.insert(r.end(), p->begin(), p->end());
    return r;
}

Context make_context(const VpAlphabet& al, Word u, Word v) {
    check_word(al, u);
    check_word(al, v);
    if (!is_well_matched(al, concat(u, v)))
        throw InvalidInput("context (" + word_to_string(al, u) + ", " + word_to_string(al, v) +
                           ") is not well-matched");
    return Context{std::move(u), std::move(v)};
}

Context compose(const Context& a, const Context& b) { return Context{concat(a.u, b.u), concat(b.v, a.v)}; }

Context power(const Context& c, std::size_t k) {
    Context r;
    for (std::size_t i = 0; i < k; ++i) r = compose(r, c);
    return r;
}

std::string context_to_string(const VpAlphabet& al, const Context& c) {
    return "(" + word_to_string(al, c.u) + ", " + word_to_string(al, c.v) + ")";
}

namespace {

// Length-lex DFS over words of exact length `len`, pruning prefixes whose
// height can no longer return to zero.
struct WmEnum {
    const VpAlphabet& al;
    std::size_t len;
    const std::function<bool(const Word&)>& fn;
    Word cur;
    bool stop = false;

    void go(long h) {
        if (stop) return;
        if (cur.size() == len) {
            if (h == 0 && !fn(cur)) stop = true;
            return;
        }
        std::size_t left = len - cur.size();
        for (Symbol s = 0; s < static_cast<Symbol>(al.size()) && !stop; ++s) {
            long nh = h + symbol_height(al, s);
            if (nh < 0 || static_cast<std::size_t>(nh) > left - 1) continue;
            cur.push_back(s);
            go(nh);
            cur.pop_back();
        }
    }
};

}  // namespace

void for_each_well_matched_of_length(const VpAlphabet& al, std::size_t len,
                                     const std::function<bool(const Word&)>& fn) {
    WmEnum e{al, len, fn, {}};
    e.go(0);
}

void for_each_well_matched(const VpAlphabet& al, std::size_t max_len,
                           const std::function<bool(const Word&)>& fn) {
    bool stop = false;
    auto wrap = [&](const Word& w) {
        if (!fn(w)) {
            stop = true;
            return false;
        }
        return true;
    };
    for (std::size_t n = 0; n <= max_len && !stop; ++n) for_each_well_matched_of_length(al, n, wrap);
}

std::vector<Word> enumerate_well_matched(const VpAlphabet& al, std::size_t max_len,
                                         const Budgets& budgets) {
    if (max_len > budgets.enum_len)
        throw BudgetExceeded("enumerate", "max_len " + std::to_string(max_len) + " > " +
                                              std::to_string(budgets.enum_len));
    std::vector<Word> out;
    for_each_well_matched(al, max_len, [&](const Word& w) {
        out.push_back(w);
        if (out.size() > budgets.closure)
            throw BudgetExceeded("enumerate", "more than " + std::to_string(budgets.closure) + " words");
        return true;
    });
    return out;
}

void for_each_context(const VpAlphabet& al, std::size_t k, std::size_t l,
                      const std::function<bool(const Context&)>& fn) {
    // u: all words of length k with nonnegative prefix heights; v completes it.
    std::size_t n = al.size();
    Word u(k, 0);
    bool stop = false;
    std::function<void(std::size_t, long)> gen_u = [&](std::size_t i, long h) {
        if (stop) return;
        if (i == k) {
            if (static_cast<std::size_t>(h) > l) return;
            Word v(l, 0);
            std::function<void(std::size_t, long)> gen_v = [&](std::size_t j, long hh) {
                if (stop) return;
                if (j == l) {
                    if (hh == 0 && !fn(Context{u, v})) stop = true;
                    return;
                }
                for (Symbol s = 0; s < static_cast<Symbol>(n) && !stop; ++s) {
                    long nh = hh + symbol_height(al, s);
                    if (nh < 0 || static_cast<std::size_t>(nh) > l - j - 1) continue;
                    v[j] = s;
                    gen_v(j + 1, nh);
                }
            };
            gen_v(0, h);
            return;
        }
        for (Symbol s = 0; s < static_cast<Symbol>(n) && !stop; ++s) {
            long nh = h + symbol_height(al, s);
            if (nh < 0) continue;
            u[i] = s;
            gen_u(i + 1, nh);
        }
    };
    gen_u(0, 0);
}

}  // namespace vpl
