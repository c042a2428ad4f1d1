#pragma once

#include <string>

#include "zs/potential.hpp"

namespace zs {

// Potential file schema (JSON):
//   {"grid_size": 64,
//    "phi1": [{"n": 1, "re": 1.0, "im": 0.0}, ...],
//    "phi2": [...]}
// or a preset form:
//   {"preset": "zero" | "constant" | "single_mode", "a": <num or {re,im}>, "b": ..., "grid_size": ...}
// grid_size is optional; when absent the smallest admissible power of two is chosen.
Potential load_potential(const std::string& path);
Potential potential_from_json_text(const std::string& text);
std::string potential_to_json_text(const Potential& p);

}  // namespace zs
