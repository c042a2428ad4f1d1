#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zs/potential.hpp"
#include "zs/wkb.hpp"

namespace zs {

// Universal expansion coefficients c_k of the eigenvalue asymptotics
//   n*pi + sum_{k>=1} c_k / n^k (+ claim-specific Fourier terms),
// obtained by solving zeta(z) + F(z / (pi + z zeta(z))) = 0 as a truncated
// power series, where F(z) = i sum_k I_k z^k / (2i)^k collects the wkb integrals.
struct ExpansionSeries {
    int order = 0;          // N; coefficients c_1 .. c_{N+1} are valid
    std::vector<cd> c;      // c[k-1] = c_k
    std::vector<cd> I;      // the integrals the series was built from
};

// I[k-1] = I_k for k = 1 .. N+1 (so order N = I.size() - 1 >= 1... N >= 0 allowed)
ExpansionSeries marchenko_coefficients(const std::vector<cd>& I);

// convenience: wkb integrals of order N, then the series
ExpansionSeries expansion_series(const Potential& p, int order);

// Asymptotic claims the toolkit can evaluate and verify.  The short tags
// ("1.1", "1.2i", ...) are the stable external identifiers used by the CLI
// and report files.
enum class ClaimId {
    mu_expansion,    // "1.1"  mu_n   = n pi + sum c_k/n^k + (phi1^(-n)+phi2^(n))/2 + O(n^-(N+1))
    pair_set,        // "1.2i" {lam_n^-, lam_n^+} = {base +- sqrt(phi1^(-n) phi2^(n))} + O(n^-(N+1/2))
    pair_real,       // "1.2ii" ordered variant for real-type potentials, O(n^-(N+1))
    gap_set,         // "1.3i" gamma_n = 2 sqrt(phi1^(-n) phi2^(n)) (branch free), O(n^-(N+1/2))
    gap_real,        // "1.3ii" gamma_n = 2 |phi1^(-n)| for real-type potentials, O(n^-(N+1))
    crit_expansion,  // "1.4i" lam_dot_n = n pi + sum c_k/n^k + O(n^-(N+1))
    tau_expansion,   // "1.4ii" tau_n same expansion, O(n^-(N+1))
    disc_at_mu,      // "1.5i" Delta(mu_n) = 2(-1)^n + O(n^-(N+1))
    antidisc_at_mu,  // "1.5ii" delta(mu_n) = i(-1)^n (phi1^(-n) - phi2^(n)) + O(n^-(N+1))
    norming_const,   // "4.1"  kappa_n = i (phi1^(-n) - phi2^(n)) + O(n^-(N+1))
};

inline constexpr ClaimId all_claims[] = {
    ClaimId::mu_expansion, ClaimId::pair_set,       ClaimId::pair_real,  ClaimId::gap_set,
    ClaimId::gap_real,     ClaimId::crit_expansion, ClaimId::tau_expansion,
    ClaimId::disc_at_mu,   ClaimId::antidisc_at_mu, ClaimId::norming_const,
};

std::string to_string(ClaimId id);
std::optional<ClaimId> parse_claim(std::string_view tag);

// exponent p in the claimed remainder O(n^-p)
double claimed_decay_power(ClaimId id, int order);

struct Prediction {
    ClaimId claim;
    int n = 0;
    cd value;                  // single value, or the first element of a pair
    std::optional<cd> value2;  // second element for pair-valued claims
    bool set_valued = false;   // true when the two values carry a branch ambiguity
    double decay_power = 0.0;
};

// Closed-form predicted value(s) for index n (|n| >= 1).  Real-type-only claims
// (pair_real, gap_real) reject potentials that fail is_real_type.
Prediction predict(const Potential& p, const ExpansionSeries& series, ClaimId claim, int n);

// Best pairing of a computed pair against a set-valued predicted pair:
// picks the assignment (of the two) minimizing the max residual.
struct SetMatch {
    bool swapped = false;
    cd r1, r2;  // residuals computed - predicted under the chosen assignment
};
SetMatch match_set_prediction(std::pair<cd, cd> computed, std::pair<cd, cd> predicted);

// sum_{k=1}^{N+1} c_k / n^k with the literal integer n
cd c_series_at(const ExpansionSeries& series, int n);

}  // namespace zs
