#include "zs/potential_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace zs {

namespace {

using nlohmann::json;

cd parse_scalar(const json& j, const char* name)
{
    if (j.is_number())
        return cd{j.get<double>(), 0.0};
    if (j.is_object())
        return cd{j.value("re", 0.0), j.value("im", 0.0)};
    throw std::invalid_argument(std::string("potential file: field '") + name +
                                "' must be a number or {re, im}");
}

ModeMap parse_modes(const json& j, const char* name)
{
    if (!j.is_array())
        throw std::invalid_argument(std::string("potential file: field '") + name +
                                    "' must be an array of {n, re, im}");
    ModeMap m;
    for (const auto& e : j) {
        if (!e.contains("n"))
            throw std::invalid_argument(std::string("potential file: entry in '") + name +
                                        "' is missing 'n'");
        m[e["n"].get<int>()] += cd{e.value("re", 0.0), e.value("im", 0.0)};
    }
    return m;
}

}  // namespace

Potential potential_from_json_text(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("potential file: malformed JSON: ") + e.what());
    }

    if (j.contains("preset")) {
        const std::string preset = j["preset"].get<std::string>();
        const cd a = j.contains("a") ? parse_scalar(j["a"], "a") : cd{1.0, 0.0};
        const cd b = j.contains("b") ? parse_scalar(j["b"], "b") : cd{1.0, 0.0};
        const int M = j.value("grid_size", 64);
        if (preset == "zero")
            return Potential::zero(M);
        if (preset == "constant")
            return Potential::constant(a, b, M);
        if (preset == "single_mode")
            return Potential::single_mode(a, b, M);
        throw std::invalid_argument("potential file: unknown preset '" + preset + "'");
    }

    if (!j.contains("phi1") || !j.contains("phi2"))
        throw std::invalid_argument("potential file: need either 'preset' or both 'phi1' and 'phi2'");
    ModeMap m1 = parse_modes(j["phi1"], "phi1");
    ModeMap m2 = parse_modes(j["phi2"], "phi2");
    int K = 0;
    for (const auto& [n, c] : m1)
        K = std::max(K, std::abs(n));
    for (const auto& [n, c] : m2)
        K = std::max(K, std::abs(n));
    const int M = j.contains("grid_size") ? j["grid_size"].get<int>() : auto_grid_size(K);
    return Potential::from_fourier(std::move(m1), std::move(m2), M);
}

Potential load_potential(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("potential file: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return potential_from_json_text(ss.str());
}

std::string potential_to_json_text(const Potential& p)
{
    json j;
    j["grid_size"] = p.grid_size();
    for (int comp = 1; comp <= 2; ++comp) {
        json arr = json::array();
        for (const auto& [n, c] : p.modes(comp))
            arr.push_back({{"n", n}, {"re", c.real()}, {"im", c.imag()}});
        j[comp == 1 ? "phi1" : "phi2"] = arr;
    }
    return j.dump(2);
}

}  // namespace zs
