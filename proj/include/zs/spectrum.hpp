#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "zs/asymptotics.hpp"
#include "zs/monodromy.hpp"
#include "zs/potential.hpp"

namespace zs {

// lexicographic order on complex numbers: by real part, then imaginary part.
// Exact comparison; callers quantize by a tolerance first when values are noisy.
inline bool lex_leq(cd a, cd b)
{
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() <= b.imag();
}

struct SolverSettings {
    double tol = 1e-12;           // residual target for root acceptance
    int n_floor = 4;              // indices with |n| < n_floor are out of contract
    int max_newton = 48;
    bool seed_with_series = true; // seed Newton from the asymptotic predictor
    int seed_order = 2;           // expansion order used for seeds
};

struct RootResult {
    cd value{0.0, 0.0};
    bool converged = false;
    double residual = 0.0;
    bool in_window = false;
};

struct PairResult {
    cd minus, plus;       // sorted by lex_leq
    bool converged = false;
    bool collapsed = false;  // reported as a double eigenvalue
    double residual = 0.0;
    bool in_window = false;
};

// (f, f') of a holomorphic function, the interface the root machinery works against
using HoloFn = std::function<std::pair<cd, cd>(cd)>;

// winding number (1/2 pi i) oint f'/f around the circle |z - center| = radius,
// trapezoid with npts nodes; returns nearest integer, or nullopt if the count is
// numerically ambiguous (integral far from an integer or f nearly vanishing on the contour)
std::optional<int> winding_number(const HoloFn& f, cd center, double radius, int npts = 256);

// argument-principle search: quadrant subdivision of the disc until a Newton run
// from the localized center converges.  Returns a root with |f| <= tol, or nullopt.
std::optional<cd> locate_root_in_disc(const HoloFn& f, cd center, double radius, double tol);

// Dirichlet eigenvalue mu_n: zero of chi_D near n pi.  Newton from the asymptotic
// seed (fallback n pi), then argument-principle subdivision of the disc of radius
// 1/2 around n pi if Newton leaves the window max(1/|n|, 0.25).
RootResult dirichlet_eigenvalue(const Potential& p, int n, const SolverSettings& s = {});
RootResult dirichlet_eigenvalue(const Potential& p, int n, double tol);

// critical point lam_dot_n: zero of dDelta near n pi (Newton uses ddDelta)
RootResult critical_point(const Potential& p, int n, const SolverSettings& s = {});
RootResult critical_point(const Potential& p, int n, double tol);

// periodic/antiperiodic pair near n pi: the two zeros of Delta - 2(-1)^n in the window.
// Stage 1 locates lam_dot_n; stage 2 seeds two Newton runs from the local quadratic
// model Delta(lam_dot) + (1/2) ddDelta (lam - lam_dot)^2; seeds below sqrt(tol)
// collapse to a double eigenvalue at the lam_dot root.
PairResult periodic_pair(const Potential& p, int n, const SolverSettings& s = {});
PairResult periodic_pair(const Potential& p, int n, double tol);

struct KappaResult {
    cd value{0.0, 0.0};
    bool ok = false;  // false when the log argument leaves the right half-plane
};
// kappa_n = 2 log((-1)^n (Delta(mu_n) + delta(mu_n)) / 2), principal branch
KappaResult kappa(const Potential& p, int n, const SolverSettings& s = {});
KappaResult kappa(const Potential& p, int n, double tol);

struct SpectralRow {
    int n = 0;
    cd mu, lam_minus, lam_plus, lam_dot;
    cd gamma, tau;              // lam_plus - lam_minus, (lam_plus + lam_minus)/2
    cd kappa;
    cd Delta_at_mu, delta_at_mu;
    cd Delta_defect;            // Delta(mu) - 2(-1)^n, cancellation-free evaluation
    double res_mu = 0.0, res_crit = 0.0, res_pair = 0.0;
    bool ok_mu = false, ok_crit = false, ok_pair = false, ok_kappa = false;
    bool pair_collapsed = false;
    bool localized = false;     // all roots within 1/|n| of n pi
    bool converged() const { return ok_mu && ok_crit && ok_pair; }
};

struct SpectralTable {
    std::vector<SpectralRow> rows;  // sorted by n; indices with |n| < n_floor skipped
    int n_min = 0, n_max = 0;
    std::uint64_t potential_fingerprint = 0;
    SolverSettings settings;
    const SpectralRow* row(int n) const;
};

// Rows are independent and computed in parallel (ZS_THREADS caps the workers).
SpectralTable spectral_table(const Potential& p, int n_min, int n_max,
                             const SolverSettings& s = {});

// Same, for an explicit index set (duplicates and |n| < n_floor entries dropped).
// Log-spaced index sets keep decay fits balanced across the |n| range.
SpectralTable spectral_table(const Potential& p, std::vector<int> indices,
                             const SolverSettings& s = {});

// log-spaced indices m_lo..m_hi (inclusive, about count per sign), both signs when
// two_sided is set
std::vector<int> log_spaced_indices(int m_lo, int m_hi, int count, bool two_sided = true);

// Smallest |n| = n_B in the table range such that every row with |n| >= n_B has all
// roots inside |lambda - n pi| <= 1/|n|; nullopt when even the largest |n| fails.
std::optional<int> localization_bound(const SpectralTable& t);

// CSV schema: n, re/im of mu, lam_minus, lam_plus, lam_dot, gamma, tau, kappa,
// Delta_at_mu, delta_at_mu, then res_mu, res_crit, res_pair, flags.
void write_csv(const SpectralTable& t, std::ostream& os);

}  // namespace zs
