#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zs/common.hpp"

namespace zs::cli {

// One-to-one image of the command-line flags; see tools/main.cpp for the parser.
struct RunConfig {
    std::string command;           // spectrum | coeffs | predict | verify | a1check
    std::string potential_path;    // JSON file, or empty when a preset is used
    std::string preset;            // zero | constant | single_mode
    cd a{1.0, 0.0}, b{1.0, 0.0};   // preset parameters
    std::optional<int> grid_size;
    int n_min = 4, n_max = 32;
    int order = 1;                 // expansion order N
    double tol = 1e-12;
    int n_floor = 4;
    double slack = 0.3;
    std::vector<std::string> theorems;  // claim tags for predict/verify ("all" allowed)
    std::vector<double> lambda_re;      // a1check sample moduli
    std::vector<double> lambda_im;      // a1check imaginary offsets
    std::string out_path;          // output file; stdout when empty
    std::string format = "csv";    // csv | json (spectrum and verify artifacts)
    int predict_n = 0;             // single index for predict (0 = use n_min..n_max)
};

// Executes one command; writes artifacts; returns the process exit status:
// 0 success (for verify: every requested report passed), 1 a verify report
// failed, 2 configuration or input error (message on stderr names the field).
int run(const RunConfig& cfg);

}  // namespace zs::cli
