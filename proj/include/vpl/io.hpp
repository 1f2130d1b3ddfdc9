#pragma once

#include <string>
#include <variant>

#include "json.hpp"
#include "vpl/classifier.hpp"
#include "vpl/dvpa.hpp"
#include "vpl/ext_algebra.hpp"
#include "vpl/semilinear.hpp"

namespace vpl {

using Json = nlohmann::json;

struct Container {
    std::string kind;  // dvpa, nvpa, vvpg or vca
    std::variant<Dvpa, Nvpa, Vvpg, Vca> value;

    const VpAlphabet& alphabet() const;
};

// Throws InvalidInput; syntax errors carry "line L, column C".
Container parse_container(const std::string& text, const std::string& source = "<input>");
Container load_container(const std::string& path);
Dvpa container_to_dvpa(const Container& c, const Budgets& budgets = {});
bool container_accepts(const Container& c, const Word& w);

Json alphabet_to_json(const VpAlphabet& al);
Json dvpa_to_json(const Dvpa& a);
Json nvpa_to_json(const Nvpa& n);
Json vvpg_to_json(const Vvpg& g);
Json vca_to_json(const Vca& v);
Json container_to_json(const Container& c);

Json algebra_to_json(const MorphismPresentation& m, const std::vector<char>& accepting);
Json semilinear_to_json(const SemilinearSet& s);
Json report_to_json(const ClassificationReport& r);
std::string report_to_text(const ClassificationReport& r);
std::string vvpg_to_text(const Vvpg& g);

// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace vpl
