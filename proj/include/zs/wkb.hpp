#pragma once

#include <vector>

#include "zs/potential.hpp"

namespace zs {

// Coefficient functions of the large-lambda expansion, built by the recursions
//   r_1 = -phi2,  r_2 = r_1',   r_{n+1} = r_n'  + phi1 * sum_{k=1}^{n-1} r_k r_{n-k}
//   s_1 = -phi1,  s_2 = -s_1',  s_{n+1} = -s_n' + phi2 * sum_{k=1}^{n-1} s_k s_{n-k}
// for n >= 2, carried one step past the requested order (k = 1 .. order+1).
// All products are formed on an oversampled grid sized for the growing band width,
// so the integrals I_k = int_0^1 phi1 r_k and J_k = int_0^1 phi2 s_k are exact
// for trigonometric-polynomial potentials.
struct WkbTable {
    int order = 0;       // expansion order N >= 1
    int grid_size = 0;   // oversampled working grid
    std::vector<std::vector<cd>> r, s;  // r[k-1], s[k-1] sampled at x_j = j/grid_size
    std::vector<cd> I, J;               // I[k-1], J[k-1], k = 1 .. order+1
};

// order in [1, 8]
WkbTable wkb_coefficients(const Potential& p, int order);

// max_k |I_k - J_k| over k = 1 .. order+1 (the two integral families coincide
// analytically; this measures how well the discretization preserves that).
double vanishing_defect(const WkbTable& t);

// theta_N(lambda) = lambda + i * sum_{k=1}^{N} I_k / (2 i lambda)^k,  lambda != 0
cd theta_n(const WkbTable& t, cd lambda);

static constexpr int wkb_order_cap = 8;

}  // namespace zs
