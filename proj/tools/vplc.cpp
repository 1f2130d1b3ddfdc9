#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "vpl/classifier.hpp"
#include "vpl/io.hpp"
#include "vpl/marked.hpp"

using namespace vpl;

namespace {

struct Config {
    std::string input;
    std::string format = "text";
    std::size_t closure = Budgets{}.closure;
    std::size_t enum_len = Budgets{}.enum_len;
    std::size_t search_len = Budgets{}.search_len;
    std::string dump_dir;
    std::string word;
    int e = -1;
    std::string lang = "Le_up";
    bool verify = false;

    Budgets budgets() const { return Budgets{closure, enum_len, search_len}; }
    bool json() const { return format == "json"; }
};

void write_file(const Config& c, const std::string& name, const std::string& content) {
    if (c.dump_dir.empty()) return;
    std::filesystem::create_directories(c.dump_dir);
    std::ofstream out(std::filesystem::path(c.dump_dir) / name, std::ios::binary);
    if (!out) throw InvalidInput(c.dump_dir + ": cannot write " + name);
    out << content;
}

void emit(const Config& c, const Json& j, const std::string& text) {
    if (c.json()) std::cout << dump(j);
    else std::cout << text;
}

int cmd_validate(const Config& c) {
    Container k = load_container(c.input);
    const auto& al = k.alphabet();
    std::ostringstream t;
    t << "ok " << k.kind << " symbols=" << al.size() << "\n";
    emit(c, Json{{"kind", "validation"}, {"ok", true}, {"container", k.kind}}, t.str());
    return 0;
}

int cmd_member(const Config& c) {
    Container k = load_container(c.input);
    Word w = parse_word(k.alphabet(), c.word);
    bool in = container_accepts(k, w);
    emit(c, Json{{"kind", "member"}, {"word", word_to_string(k.alphabet(), w)}, {"member", in}},
         std::string(in ? "true" : "false") + "\n");
    return 0;
}

SyntacticResult syntactic(const Config& c, const Container& k) {
    Dvpa a = container_to_dvpa(k, c.budgets());
    write_file(c, "input.dvpa.json", dump(dvpa_to_json(a)));
    SyntacticResult s = syntactic_of_dvpa(a, c.budgets());
    write_file(c, "syntactic.json", dump(algebra_to_json(s.m, s.accepting)));
    return s;
}

int cmd_syntactic(const Config& c) {
    Container k = load_container(c.input);
    SyntacticResult s = syntactic(c, k);
    const auto& A = s.m.alg;
    std::ostringstream t;
    std::size_t acc = 0;
    for (char x : s.accepting) acc += x != 0;
    t << "r_size " << A.r_size << " o_size " << A.o.size() << " accepting " << acc << "\n";
    t << "R:";
    for (int r = 0; r < A.r_size; ++r) {
        t << " " << r;
        if (r < static_cast<int>(A.r_labels.size())) t << "=" << A.r_labels[static_cast<std::size_t>(r)];
    }
    t << "\nmult:\n";
    for (int x = 0; x < A.r_size; ++x) {
        t << " ";
        for (int y = 0; y < A.r_size; ++y) t << " " << A.mul(x, y);
        t << "\n";
    }
    t << "O:\n";
    for (std::size_t f = 0; f < A.o.size(); ++f) {
        t << "  " << f << ":";
        for (int v : A.o[f]) t << " " << v;
        t << "\n";
    }
    emit(c, algebra_to_json(s.m, s.accepting), t.str());
    return 0;
}

int cmd_parikh(const Config& c) {
    Container k = load_container(c.input);
    SyntacticResult s = syntactic(c, k);
    close_o(s.m, c.budgets());
    if (c.e < 0 || c.e >= static_cast<int>(s.m.alg.o.size()))
        throw InvalidInput("e: expected an element of O in [0, " + std::to_string(s.m.alg.o.size()) + ")");
    SemilinearSet p;
    if (c.lang == "Le" || c.lang == "Le_up" || c.lang == "Me") {
        LeFamily le(s.m, c.budgets());
        p = c.lang == "Me" ? le.parikh_Me(c.e) : le.parikh_Le(c.e, c.lang == "Le_up");
    } else {
        KeFamily ke(s.m, c.budgets());
        p = ke.parikh_Ke(c.e, c.lang == "Ke_up");
    }
    Json j = semilinear_to_json(p);
    write_file(c, "parikh_" + c.lang + "_" + std::to_string(c.e) + ".json", dump(j));
    emit(c, j, p.to_string() + "\n");
    return 0;
}

int cmd_classify(const Config& c) {
    Container k = load_container(c.input);
    SyntacticResult s = syntactic(c, k);
    ClassifyOptions opt;
    opt.budgets = c.budgets();
    opt.verify_grammars = c.verify;
    ClassificationReport r = classify_algebra(s, opt);
    if (!c.dump_dir.empty()) {
        Analysis an(s.m, s.accepting, c.budgets());
        for (int e : an.idempotents()) {
            write_file(c, "parikh_Le_up_" + std::to_string(e) + ".json", dump(semilinear_to_json(an.p_le_up(e))));
            write_file(c, "parikh_Ke_up_" + std::to_string(e) + ".json",
                       dump(semilinear_to_json(an.p_ke_up(e, false))));
        }
        for (std::size_t i = 0; i < r.grammars.size(); ++i)
            write_file(c, "grammar_" + std::to_string(i) + ".vvpg.json", dump(vvpg_to_json(r.grammars[i])));
        write_file(c, "report.json", dump(report_to_json(r)));
    }
    emit(c, report_to_json(r), report_to_text(r));
    return 0;
}

int fail(const Config& c, int code, const std::string& kind, const std::string& stage, const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    if (c.json()) {
        Json j{{"kind", "error"}, {"error", kind}, {"message", msg}};
        if (!stage.empty()) j["stage"] = stage;
        std::cout << dump(j);
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    Config c;
    CLI::App app{"Visibly pushdown language toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--budget-closure", c.closure, "Max elements in a generated closure")
        ->envname("VPLC_BUDGET_CLOSURE")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget-enum", c.enum_len, "Max enumeration length")
        ->envname("VPLC_BUDGET_ENUM")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget-search", c.search_len, "Max witness search length")
        ->envname("VPLC_BUDGET_SEARCH")
        ->check(CLI::PositiveNumber);
    app.add_option("--dump-intermediate", c.dump_dir, "Write intermediate results to this directory");

    auto* validate = app.add_subcommand("validate", "Check a container file");
    validate->add_option("file", c.input)->required();
    auto* member = app.add_subcommand("member", "Membership of a whitespace-separated word");
    member->add_option("file", c.input)->required();
    member->add_option("word", c.word)->required();
    auto* synt = app.add_subcommand("syntactic", "Syntactic Ext-algebra");
    synt->add_option("file", c.input)->required();
    auto* parikh = app.add_subcommand("parikh", "Length image of a marked language of the syntactic algebra");
    parikh->add_option("file", c.input)->required();
    parikh->add_option("e", c.e, "Element of O")->required();
    parikh->add_option("--lang", c.lang, "Marked language")->check(CLI::IsMember({"Le", "Le_up", "Ke", "Ke_up", "Me"}));
    auto* cls = app.add_subcommand("classify", "Classify the language");
    cls->add_option("file", c.input)->required();
    cls->add_flag("--verify-grammars", c.verify, "Re-check each emitted grammar");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (*validate) return cmd_validate(c);
        if (*member) return cmd_member(c);
        if (*synt) return cmd_syntactic(c);
        if (*parikh) return cmd_parikh(c);
        return cmd_classify(c);
    } catch (const BudgetExceeded& e) {
        return fail(c, 2, "budget", e.stage(), e.what());
    } catch (const InvalidInput& e) {
        return fail(c, 3, "invalid", "", e.what());
    } catch (const std::exception& e) {
        return fail(c, 1, "internal", "", e.what());
    }
}
