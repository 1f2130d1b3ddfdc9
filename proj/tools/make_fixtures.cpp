// Writes the built-in fixtures as container files.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "vpl/fixtures.hpp"
#include "vpl/io.hpp"

using namespace vpl;

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures DIR\n";
        return 3;
    }
    std::filesystem::path dir(argv[1]);
    std::filesystem::create_directories(dir);
    auto put = [&](const std::string& name, const Json& j) {
        std::ofstream out(dir / name, std::ios::binary);
        out << dump(j);
        if (!out) {
            std::cerr << "error: cannot write " << (dir / name).string() << "\n";
            std::exit(1);
        }
    };
    for (const auto& f : fixtures::all()) put(f.name + ".dvpa.json", dvpa_to_json(dvpa_trim(f.dvpa)));
    put("anbn_pos.dvpa.json", dvpa_to_json(dvpa_trim(fixtures::anbn(true))));
    put("l12.vvpg.json", vvpg_to_json(fixtures::l12_grammar()));
    put("k.vvpg.json", vvpg_to_json(fixtures::k_grammar()));
    put("anbn.vca.json", vca_to_json(fixtures::anbn_vca()));
    return 0;
}
