#include "grk/module_io.hpp"

#include "grk/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace grk {

using nlohmann::json;

std::string module_to_json(const KroneckerModule& m) {
    nlohmann::ordered_json j;
    j["n"] = m.n();
    j["q"] = m.q();
    j["dim"] = {m.d1(), m.d2()};
    nlohmann::ordered_json maps = nlohmann::ordered_json::array();
    for (const auto& a : m.maps()) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t r = 0; r < a.rows(); ++r) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (std::size_t c = 0; c < a.cols(); ++c)
                row.push_back(int(a(r, c)));
            rows.push_back(std::move(row));
        }
        maps.push_back(std::move(rows));
    }
    j["maps"] = std::move(maps);
    return j.dump();
}

KroneckerModule module_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("module JSON: ") + e.what());
    }
    try {
        const unsigned n = j.at("n").get<unsigned>();
        const unsigned q = j.at("q").get<unsigned>();
        const auto& dim = j.at("dim");
        if (!dim.is_array() || dim.size() != 2)
            throw InputError("module JSON: dim must be [d1, d2]");
        const std::size_t d1 = dim[0].get<std::size_t>();
        const std::size_t d2 = dim[1].get<std::size_t>();
        require_prime(q);
        const auto& maps_json = j.at("maps");
        if (!maps_json.is_array())
            throw InputError("module JSON: maps must be an array");
        std::vector<FqMatrix> maps;
        for (const auto& mj : maps_json) {
            if (!mj.is_array() || mj.size() != d2)
                throw InputError("module JSON: each map needs " + std::to_string(d2) + " rows");
            std::vector<long long> flat;
            for (const auto& row : mj) {
                if (!row.is_array() || row.size() != d1)
                    throw InputError("module JSON: each row needs " + std::to_string(d1) + " entries");
                for (const auto& x : row) {
                    const long long v = x.get<long long>();
                    if (v < 0 || v >= static_cast<long long>(q))
                        throw InputError("module JSON: entry " + std::to_string(v) + " is not a residue mod q");
                    flat.push_back(v);
                }
            }
            maps.emplace_back(q, d2, d1, flat);
        }
        return KroneckerModule(n, q, d1, d2, std::move(maps));
    } catch (const json::exception& e) {
        throw InputError(std::string("module JSON: ") + e.what());
    }
}

KroneckerModule read_module_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return module_from_json(buf.str());
}

void write_module_file(const std::filesystem::path& path, const KroneckerModule& m) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write " + path.string());
    out << module_to_json(m) << '\n';
}

} // namespace grk
