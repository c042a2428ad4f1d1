#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "zs/asymptotics.hpp"
#include "zs/potential.hpp"
#include "zs/spectrum.hpp"

namespace zs {

struct ResidualEntry {
    int n = 0;
    cd residual;        // computed - predicted
    double weighted = 0.0;  // |residual| * |n|^p
};

// Decay verdict for one asymptotic claim: the remainder O(n^-p) is accepted when the
// weighted sequence stays bounded and the log-log slope of |residual| vs |n| is at
// most -p + slack.  Entries at or below the 1e-14 noise floor are excluded from the
// slope fit (finite data cannot certify summability; boundedness + slope is the proxy).
struct ResidualReport {
    ClaimId claim{};
    int order = 0;          // expansion order N the predictions used
    double power = 0.0;     // claimed decay exponent p
    double slack = 0.3;
    int n_lo = 0, n_hi = 0; // |n| range covered
    std::vector<ResidualEntry> entries;
    double sup_weighted = 0.0;
    double slope = 0.0;     // fitted d log|res| / d log|n| over |n| >= fit_floor
    bool slope_valid = false;  // false when too few entries rise above the noise floor
    bool pass = false;
    std::string note;
};

// residuals of one claim over the converged rows of a table, using pred(n)
std::vector<std::pair<int, cd>> claim_residuals(const SpectralTable& t, ClaimId claim,
                                                const std::function<Prediction(int)>& pred);

// assemble weighting, slope fit and verdict from raw residuals
ResidualReport finalize_report(ClaimId claim, int order, const std::vector<std::pair<int, cd>>& raw,
                               double slack, int fit_floor = 8);

// standard pipeline: predictions from the expansion series, residuals over the table.
// Rows must be converged; fewer than 8 usable rows is an error.
ResidualReport residual_report(const Potential& p, const SpectralTable& t,
                               const ExpansionSeries& series, ClaimId claim, double slack = 0.3,
                               int fit_floor = 8);

void report_to_csv(const ResidualReport& r, std::ostream& os);
std::string report_to_json(const ResidualReport& r);

// |M(1,lambda) - approximant| / e^{|Im lambda|} scaled by |lambda|^2 per sample;
// the asymptotic error bound predicts a bounded sequence.
struct A1Sample {
    cd lambda;
    double err = 0.0;       // normalized entrywise error
    double weighted = 0.0;  // err * |lambda|^2
};
struct A1Check {
    std::vector<A1Sample> samples;
    double sup = 0.0, min = 0.0;  // of the weighted values
    double ratio = 0.0;           // sup / min
};
// all samples need |lambda| >= 10; x = 1 fixed
A1Check a1_bound_check(const Potential& p, const std::vector<cd>& lambda_samples,
                       double tol = 1e-9);

// Perturbed-Fourier-coefficient bound: with xi_n = n pi + alpha_n, |alpha_n| <= a/<n>,
// phi_n(1) = int_0^1 e^{i xi_n (1-2t)} f(t) dt satisfies
//   sum <n>^2 |phi_n(1) - (-1)^n f^(n)|^2  <=  e^{2a} |f|_{L2}^2.
// The sum is evaluated over |n| <= n_range (truncation only lowers the left side).
struct B1Check {
    double weighted_sum = 0.0;
    double bound = 0.0;
    bool pass = false;
};
using AlphaRule = std::function<cd(int)>;
AlphaRule alpha_rule_exact(double a);  // alpha_n = a / max(1, |n|)
B1Check lemma_b1_check(const ModeMap& f_modes, const AlphaRule& alpha, double a,
                       int n_range = 256);
// grid samples on a power-of-two grid (analyzed to modes internally)
B1Check lemma_b1_check(const std::vector<cd>& f_grid, const AlphaRule& alpha, double a,
                       int n_range = 256);

// Square-root perturbation bounds for the continuity-consistent branch:
//   |sqrt(z+h) - sqrt(z)| <= |h| / |2z|^{1/2}   and   <= sqrt(|h|)/2
// requires |h| <= |z|/2 and z != 0.
bool sqrt_perturbation_check(cd z, cd h);

// |tau_n - lam_dot_n| <= C gamma_n^2 across the table; C fitted by least squares
// through the origin over rows whose gap is resolved (|gamma|^2 above a floor).
struct TauGapCheck {
    double C = 0.0;
    double max_ratio = 0.0;
    int used_rows = 0;
    bool vacuous = false;  // all gaps below the resolution floor
    bool pass = false;
};
TauGapCheck tau_gap_check(const SpectralTable& t, double gamma2_floor = 1e-8);

}  // namespace zs
