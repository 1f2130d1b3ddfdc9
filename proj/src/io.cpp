#include "vpl/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace vpl {

const VpAlphabet& Container::alphabet() const {
    return std::visit([](const auto& x) -> const VpAlphabet& { return x.alphabet; }, value);
}

namespace {

std::string location(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// Field access with path-qualified errors.
class Reader {
public:
    Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {}

    [[noreturn]] void fail(const std::string& what) const { throw InvalidInput(path_ + ": " + what); }
    bool has(const std::string& k) const { return j_.is_object() && j_.contains(k); }
    Reader at(const std::string& k) const {
        if (!j_.is_object()) fail("expected an object");
        if (!j_.contains(k)) fail("missing field \"" + k + "\"");
        return Reader(j_.at(k), path_ + "." + k);
    }
    Reader at(std::size_t i) const { return Reader(j_.at(i), path_ + "[" + std::to_string(i) + "]"); }
    std::size_t size() const {
        if (!j_.is_array()) fail("expected an array");
        return j_.size();
    }
    std::string str() const {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }
    long integer() const {
        if (!j_.is_number_integer()) fail("expected an integer");
        return j_.get<long>();
    }
    std::vector<std::string> strings() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).str());
        return out;
    }
    const Json& raw() const { return j_; }
    const std::string& path() const { return path_; }

private:
    const Json& j_;
    std::string path_;
};

int index_of(const Reader& r, const std::vector<std::string>& names, const std::string& what) {
    std::string n = r.str();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == n) return static_cast<int>(i);
    r.fail("unknown " + what + " \"" + n + "\"");
}

Symbol symbol_of(const Reader& r, const VpAlphabet& al) {
    auto s = al.find(r.str());
    if (!s) r.fail("unknown symbol \"" + r.str() + "\"");
    return *s;
}

Word word_of(const Reader& r, const VpAlphabet& al) {
    Word w;
    for (std::size_t i = 0; i < r.size(); ++i) w.push_back(symbol_of(r.at(i), al));
    return w;
}

VpAlphabet read_alphabet(const Reader& r) {
    auto get = [&](const char* k) { return r.has(k) ? r.at(k).strings() : std::vector<std::string>{}; };
    return VpAlphabet(get("call"), get("int"), get("ret"));
}

std::vector<char> read_finals(const Reader& r, const std::vector<std::string>& states) {
    std::vector<char> f(states.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) f[static_cast<std::size_t>(index_of(r.at(i), states, "state"))] = 1;
    return f;
}

std::vector<std::string> read_stack(const Reader& r) {
    auto s = r.strings();
    if (s.empty() || s[0] != kBottomName) r.fail("the first stack symbol must be " + kBottomName);
    return s;
}

Dvpa read_dvpa(const Reader& r) {
    VpAlphabet al = read_alphabet(r.at("alphabet"));
    auto states = r.at("states").strings();
    auto stack = read_stack(r.at("stack"));
    Dvpa d(al, states, stack);
    d.initial = index_of(r.at("initial"), states, "state");
    d.finals = read_finals(r.at("finals"), states);
    if (r.has("sink")) {
        int sink = index_of(r.at("sink"), states, "state");
        if (!al.calls().empty() && stack.size() < 2) r.at("sink").fail("a sink needs a non-bottom stack symbol");
        for (int q = 0; q < static_cast<int>(states.size()); ++q)
            for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s)
                for (int g = 0; g < static_cast<int>(stack.size()); ++g)
                    d.set(q, s, g, sink, al.kind(s) == Kind::Call ? 1 : -1);
    }
    Reader ts = r.at("transitions");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        Reader t = ts.at(i);
        int from = index_of(t.at("from"), states, "state");
        Symbol sym = symbol_of(t.at("sym"), al);
        int top = index_of(t.at("top"), stack, "stack symbol");
        int to = index_of(t.at("to"), states, "state");
        int push = -1;
        if (t.has("push")) {
            Reader p = t.at("push");
            if (p.size() > 1) p.fail("at most one pushed symbol");
            if (p.size() == 1) push = index_of(p.at(0), stack, "stack symbol");
        }
        if ((al.kind(sym) == Kind::Call) != (push >= 0)) t.fail("calls push exactly one symbol, other letters none");
        if (push == kBottom) t.fail("the bottom symbol cannot be pushed");
        d.set(from, sym, top, to, push);
    }
    try {
        d.validate();
    } catch (const InvalidInput& e) {
        r.fail(e.what());
    }
    return d;
}

Nvpa read_nvpa(const Reader& r) {
    Nvpa n;
    n.alphabet = read_alphabet(r.at("alphabet"));
    n.states = r.at("states").strings();
    n.stack = read_stack(r.at("stack"));
    Reader in = r.at("initial");
    for (std::size_t i = 0; i < in.size(); ++i) n.initials.push_back(index_of(in.at(i), n.states, "state"));
    n.finals = read_finals(r.at("finals"), n.states);
    Reader ts = r.at("transitions");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        Reader t = ts.at(i);
        NvpaTransition x{};
        x.from = index_of(t.at("from"), n.states, "state");
        x.sym = symbol_of(t.at("sym"), n.alphabet);
        x.top = t.has("top") && !t.at("top").raw().is_null() ? index_of(t.at("top"), n.stack, "stack symbol") : -1;
        x.to = index_of(t.at("to"), n.states, "state");
        x.push = -1;
        if (t.has("push") && t.at("push").size() == 1) x.push = index_of(t.at("push").at(0), n.stack, "stack symbol");
        if (n.alphabet.kind(x.sym) == Kind::Ret && x.top < 0) t.fail("returns need a stack symbol");
        n.trans.push_back(x);
    }
    try {
        n.validate();
    } catch (const InvalidInput& e) {
        r.fail(e.what());
    }
    return n;
}

Vvpg read_vvpg(const Reader& r) {
    Vvpg g;
    g.alphabet = read_alphabet(r.at("alphabet"));
    g.nonterminals = r.at("nonterminals").strings();
    g.start = index_of(r.at("start"), g.nonterminals, "nonterminal");
    Reader ps = r.at("productions");
    for (std::size_t i = 0; i < ps.size(); ++i) {
        Reader p = ps.at(i);
        if (!p.has("rhs") || p.at("rhs").raw().is_null()) {
            int lhs = index_of(p.at("lhs"), g.nonterminals, "nonterminal");
            if (lhs != g.start || (p.has("u") && p.at("u").size()) || (p.has("v") && p.at("v").size()))
                p.fail("only the start nonterminal has an empty production");
            continue;
        }
        g.prods.push_back({index_of(p.at("lhs"), g.nonterminals, "nonterminal"), word_of(p.at("u"), g.alphabet),
                           index_of(p.at("rhs"), g.nonterminals, "nonterminal"), word_of(p.at("v"), g.alphabet)});
    }
    try {
        g.validate();
    } catch (const InvalidInput& e) {
        r.fail(e.what());
    }
    return g;
}

Vca read_vca(const Reader& r) {
    Vca v;
    v.alphabet = read_alphabet(r.at("alphabet"));
    v.states = r.at("states").strings();
    v.initial = index_of(r.at("initial"), v.states, "state");
    v.finals = read_finals(r.at("finals"), v.states);
    long m = r.at("threshold").integer();
    if (m < 0) r.at("threshold").fail("threshold must be nonnegative");
    v.threshold = static_cast<int>(m);
    Reader levels = r.at("delta");
    if (levels.size() != static_cast<std::size_t>(m) + 1) levels.fail("expected threshold + 1 transition tables");
    auto nsym = v.alphabet.size();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        std::vector<int> d(v.states.size() * nsym, -1);
        Reader ts = levels.at(i);
        for (std::size_t j = 0; j < ts.size(); ++j) {
            Reader t = ts.at(j);
            int from = index_of(t.at("from"), v.states, "state");
            Symbol s = symbol_of(t.at("sym"), v.alphabet);
            d[static_cast<std::size_t>(from) * nsym + static_cast<std::size_t>(s)] = index_of(t.at("to"), v.states, "state");
        }
        v.delta.push_back(d);
    }
    try {
        v.validate();
    } catch (const InvalidInput& e) {
        r.fail(e.what());
    }
    return v;
}

Json names(const std::vector<std::string>& v) { return Json(v); }

Json word_json(const VpAlphabet& al, const Word& w) {
    Json j = Json::array();
    for (Symbol s : w) j.push_back(al.name(s));
    return j;
}

Json finals_json(const std::vector<std::string>& states, const std::vector<char>& f) {
    Json j = Json::array();
    for (std::size_t i = 0; i < states.size(); ++i)
        if (f[i]) j.push_back(states[i]);
    return j;
}

Json context_json(const VpAlphabet& al, const Context& c) {
    return Json{{"u", word_to_string(al, c.u)}, {"v", word_to_string(al, c.v)}};
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

Container parse_container(const std::string& text, const std::string& source) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::string msg = e.what();
        auto p = msg.find("; ");
        throw InvalidInput(source + ": " + location(text, e.byte == 0 ? 0 : e.byte - 1) + ": syntax error" +
                           (p == std::string::npos ? "" : ": " + msg.substr(p + 2)));
    }
    Reader r(j, source);
    std::string kind = r.at("kind").str();
    Container c;
    c.kind = kind;
    if (kind == "dvpa") c.value = read_dvpa(r);
    else if (kind == "nvpa") c.value = read_nvpa(r);
    else if (kind == "vvpg") c.value = read_vvpg(r);
    else if (kind == "vca") c.value = read_vca(r);
    else r.at("kind").fail("unknown kind \"" + kind + "\"");
    return c;
}

Container load_container(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_container(ss.str(), path);
}

Dvpa container_to_dvpa(const Container& c, const Budgets& budgets) {
    switch (c.value.index()) {
        case 0: return std::get<Dvpa>(c.value);
        case 1: return nvpa_determinize(std::get<Nvpa>(c.value), budgets);
        case 2: return nvpa_determinize(vvpg_to_nvpa(std::get<Vvpg>(c.value)), budgets);
        default: return vca_to_dvpa(std::get<Vca>(c.value));
    }
}

bool container_accepts(const Container& c, const Word& w) {
    switch (c.value.index()) {
        case 0: return dvpa_accepts(std::get<Dvpa>(c.value), w);
        case 1: return nvpa_accepts(std::get<Nvpa>(c.value), w);
        case 2: return vvpg_derives(std::get<Vvpg>(c.value), w);
        default: return vca_accepts(std::get<Vca>(c.value), w);
    }
}

Json alphabet_to_json(const VpAlphabet& al) {
    return Json{{"call", names(al.call_names())}, {"int", names(al.int_names())}, {"ret", names(al.ret_names())}};
}

Json dvpa_to_json(const Dvpa& a) {
    const auto& al = a.alphabet;
    Json ts = Json::array();
    for (int q = 0; q < static_cast<int>(a.num_states()); ++q)
        for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s)
            for (int g = 0; g < static_cast<int>(a.num_stack()); ++g) {
                Json push = Json::array();
                if (a.pushed(q, s, g) >= 0) push.push_back(a.stack[static_cast<std::size_t>(a.pushed(q, s, g))]);
                ts.push_back(Json{{"from", a.states[static_cast<std::size_t>(q)]},
                                  {"sym", al.name(s)},
                                  {"top", a.stack[static_cast<std::size_t>(g)]},
                                  {"to", a.states[static_cast<std::size_t>(a.next(q, s, g))]},
                                  {"push", push}});
            }
    return Json{{"kind", "dvpa"},
                {"alphabet", alphabet_to_json(al)},
                {"states", names(a.states)},
                {"stack", names(a.stack)},
                {"initial", a.states[static_cast<std::size_t>(a.initial)]},
                {"finals", finals_json(a.states, a.finals)},
                {"transitions", ts}};
}

Json nvpa_to_json(const Nvpa& n) {
    Json ts = Json::array();
    for (const auto& t : n.trans) {
        Json push = Json::array();
        if (t.push >= 0) push.push_back(n.stack[static_cast<std::size_t>(t.push)]);
        ts.push_back(Json{{"from", n.states[static_cast<std::size_t>(t.from)]},
                          {"sym", n.alphabet.name(t.sym)},
                          {"top", t.top < 0 ? Json(nullptr) : Json(n.stack[static_cast<std::size_t>(t.top)])},
                          {"to", n.states[static_cast<std::size_t>(t.to)]},
                          {"push", push}});
    }
    Json init = Json::array();
    for (int q : n.initials) init.push_back(n.states[static_cast<std::size_t>(q)]);
    return Json{{"kind", "nvpa"},
                {"alphabet", alphabet_to_json(n.alphabet)},
                {"states", names(n.states)},
                {"stack", names(n.stack)},
                {"initial", init},
                {"finals", finals_json(n.states, n.finals)},
                {"transitions", ts}};
}

Json vvpg_to_json(const Vvpg& g) {
    Json ps = Json::array();
    ps.push_back(Json{{"lhs", g.nonterminals[static_cast<std::size_t>(g.start)]}, {"u", Json::array()}, {"rhs", nullptr}, {"v", Json::array()}});
    for (const auto& p : g.prods)
        ps.push_back(Json{{"lhs", g.nonterminals[static_cast<std::size_t>(p.lhs)]},
                          {"u", word_json(g.alphabet, p.u)},
                          {"rhs", g.nonterminals[static_cast<std::size_t>(p.rhs)]},
                          {"v", word_json(g.alphabet, p.v)}});
    return Json{{"kind", "vvpg"},
                {"alphabet", alphabet_to_json(g.alphabet)},
                {"nonterminals", names(g.nonterminals)},
                {"start", g.nonterminals[static_cast<std::size_t>(g.start)]},
                {"productions", ps}};
}

Json vca_to_json(const Vca& v) {
    auto nsym = v.alphabet.size();
    Json levels = Json::array();
    for (const auto& d : v.delta) {
        Json ts = Json::array();
        for (std::size_t q = 0; q < v.states.size(); ++q)
            for (std::size_t s = 0; s < nsym; ++s)
                ts.push_back(Json{{"from", v.states[q]},
                                  {"sym", v.alphabet.name(static_cast<Symbol>(s))},
                                  {"to", v.states[static_cast<std::size_t>(d[q * nsym + s])]}});
        levels.push_back(ts);
    }
    return Json{{"kind", "vca"},
                {"alphabet", alphabet_to_json(v.alphabet)},
                {"states", names(v.states)},
                {"initial", v.states[static_cast<std::size_t>(v.initial)]},
                {"finals", finals_json(v.states, v.finals)},
                {"threshold", v.threshold},
                {"delta", levels}};
}

Json container_to_json(const Container& c) {
    switch (c.value.index()) {
        case 0: return dvpa_to_json(std::get<Dvpa>(c.value));
        case 1: return nvpa_to_json(std::get<Nvpa>(c.value));
        case 2: return vvpg_to_json(std::get<Vvpg>(c.value));
        default: return vca_to_json(std::get<Vca>(c.value));
    }
}

Json algebra_to_json(const MorphismPresentation& m, const std::vector<char>& accepting) {
    const auto& A = m.alg;
    const auto& al = m.alphabet;
    auto n = static_cast<std::size_t>(A.r_size);
    Json mult = Json::array();
    for (std::size_t x = 0; x < n; ++x) {
        Json row = Json::array();
        for (std::size_t y = 0; y < n; ++y) row.push_back(A.mult[x * n + y]);
        mult.push_back(row);
    }
    Json o = Json::array();
    for (const auto& f : A.o) o.push_back(Json(f));
    Json phi = Json::object();
    for (Symbol c : al.ints()) phi[al.name(c)] = m.phi_int[static_cast<std::size_t>(al.class_index(c))];
    Json psi = Json::object();
    for (Symbol a : al.calls())
        for (Symbol b : al.rets()) psi[al.name(a) + "," + al.name(b)] = m.psi[static_cast<std::size_t>(al.pair_index(a, b))];
    Json acc = Json::array();
    for (std::size_t x = 0; x < n; ++x)
        if (accepting[x]) acc.push_back(x);
    Json j{{"kind", "ext-algebra"}, {"alphabet", alphabet_to_json(al)}, {"r_size", A.r_size}, {"o_size", A.o.size()},
           {"r_one", A.r_one},       {"o_one", A.o_one},                {"mult", mult},        {"o", o},
           {"phi_int", phi},         {"psi", psi},                      {"accepting", acc}};
    if (!A.r_labels.empty()) j["r_labels"] = A.r_labels;
    return j;
}

Json semilinear_to_json(const SemilinearSet& s) {
    Json comps = Json::array();
    for (const auto& c : s.components()) {
        Json ps = Json::array();
        for (const auto& p : c.periods) ps.push_back(Json(p));
        comps.push_back(Json{{"base", Json(c.base)}, {"periods", ps}});
    }
    return Json{{"kind", "semilinear"}, {"dim", s.dim()}, {"components", comps}};
}

Json report_to_json(const ClassificationReport& r) {
    const auto& d = r.diag;
    Json j{{"kind", "report"}, {"verdict", verdict_name(r.verdict)}};
    j["mod_m"] = r.mod_m ? Json(*r.mod_m) : Json(nullptr);
    j["kl"] = r.kl ? Json::array({r.kl->first, r.kl->second}) : Json(nullptr);
    if (r.contexts) {
        j["contexts"] = Json{{"first", context_json(r.alphabet, r.contexts->first)},
                             {"second", context_json(r.alphabet, r.contexts->second)},
                             {"lengths", Json(std::vector<long>(r.contexts->lengths.begin(), r.contexts->lengths.end()))}};
    } else {
        j["contexts"] = nullptr;
    }
    Json gs = Json::array();
    for (const auto& g : r.grammars) gs.push_back(vvpg_to_json(g));
    j["grammars"] = gs;
    Json diag{{"weakly_length_sync", d.weak_ls},
              {"length_sync", d.ls},
              {"quasi_aperiodic", d.quasi_aperiodic},
              {"solvable", d.solvable},
              {"r_j_classes", d.r_j_classes},
              {"o_j_classes", d.o_j_classes},
              {"z", d.z},
              {"witness_e", d.witness_e},
              {"witness_mirrored", d.witness_mirrored},
              {"kl_case", d.kl_case},
              {"mod_group", d.mod_group},
              {"grammar_e", d.grammar_e}};
    if (!d.grammar_verified.empty()) diag["grammar_verified"] = d.grammar_verified;
    if (!r.note.empty()) diag["note"] = r.note;
    j["diagnostics"] = diag;
    j["algebra"] = Json{{"r_size", d.r_size}, {"o_size", d.o_size}};
    return j;
}

std::string vvpg_to_text(const Vvpg& g) {
    std::ostringstream o;
    const auto& nt = g.nonterminals;
    o << "  " << nt[static_cast<std::size_t>(g.start)] << " -> eps\n";
    for (const auto& p : g.prods) {
        o << "  " << nt[static_cast<std::size_t>(p.lhs)] << " -> " << word_to_string(g.alphabet, p.u) << " "
          << nt[static_cast<std::size_t>(p.rhs)] << " " << word_to_string(g.alphabet, p.v) << "\n";
    }
    return o.str();
}

std::string report_to_text(const ClassificationReport& r) {
    const auto& d = r.diag;
    std::ostringstream o;
    o << verdict_name(r.verdict);
    if (r.mod_m) o << " m=" << *r.mod_m;
    if (r.kl) o << " k=" << r.kl->first << " l=" << r.kl->second;
    if (r.verdict == Verdict::Intermediate) o << " grammars=" << r.grammars.size();
    o << "\n";
    if (r.contexts) {
        const auto& c = *r.contexts;
        o << "contexts: " << context_to_string(r.alphabet, c.first) << " " << context_to_string(r.alphabet, c.second)
          << " lengths " << c.lengths[0] << " " << c.lengths[1] << " " << c.lengths[2] << " " << c.lengths[3] << "\n";
    }
    for (std::size_t i = 0; i < r.grammars.size(); ++i) {
        o << "grammar " << i << " (e=" << d.grammar_e[i] << "):\n" << vvpg_to_text(r.grammars[i]);
    }
    o << "diagnostics: weakly_length_sync=" << bool_str(d.weak_ls) << " length_sync=" << bool_str(d.ls)
      << " quasi_aperiodic=" << bool_str(d.quasi_aperiodic) << " solvable=" << bool_str(d.solvable) << "\n";
    o << "algebra: r_size=" << d.r_size << " o_size=" << d.o_size << " r_j_classes=" << d.r_j_classes
      << " o_j_classes=" << d.o_j_classes << "\n";
    if (!d.z.empty()) {
        o << "z:";
        for (int e : d.z) o << " " << e;
        o << "\n";
    }
    if (!d.grammar_verified.empty()) {
        o << "grammar_verified:";
        for (bool b : d.grammar_verified) o << " " << bool_str(b);
        o << "\n";
    }
    if (!r.note.empty()) o << "note: " << r.note << "\n";
    return o.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace vpl
