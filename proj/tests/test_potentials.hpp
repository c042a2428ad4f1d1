#pragma once

// Shared test potentials and closed-form oracles used across the suites.

#include <random>

#include "zs/mat2.hpp"
#include "zs/monodromy.hpp"
#include "zs/potential.hpp"

namespace zs::testing {

// Real-type 4-mode trig polynomial with dominant +-1,+-2 modes: gap and
// norming-constant tails decay through several resolvable octaves before the
// collapse floor, which is what the decay fits need.
inline Potential four_mode_real()
{
    ModeMap u = {
        {1, std::polar(0.70, 0.4)},   {2, std::polar(1.30, -1.0)},
        {3, std::polar(0.15, 0.9)},   {4, std::polar(0.12, 2.2)},
        {-1, std::polar(0.65, 1.7)},  {-2, std::polar(1.20, -0.3)},
        {-3, std::polar(0.14, -2.0)}, {-4, std::polar(0.11, 1.1)},
    };
    ModeMap v;
    for (const auto& [n, c] : u)
        v[-n] = std::conj(c);
    return Potential::from_fourier(std::move(u), std::move(v), 64);
}

// Non-real-type complex potential with independent components, same band layout.
inline Potential four_mode_complex()
{
    ModeMap m1 = {
        {1, std::polar(0.55, 0.7)},   {2, std::polar(1.05, -0.9)},
        {3, std::polar(0.13, 1.3)},   {4, std::polar(0.10, 2.4)},
        {-1, std::polar(0.45, 2.0)},  {-2, std::polar(0.85, -0.2)},
        {-3, std::polar(0.11, -1.7)}, {-4, std::polar(0.08, 0.6)},
    };
    ModeMap m2 = {
        {1, std::polar(0.50, -1.2)},  {2, std::polar(0.95, 0.4)},
        {3, std::polar(0.12, -2.1)},  {4, std::polar(0.09, 1.0)},
        {-1, std::polar(0.60, 0.2)},  {-2, std::polar(1.15, -2.8)},
        {-3, std::polar(0.14, 1.8)},  {-4, std::polar(0.11, -0.5)},
    };
    return Potential::from_fourier(std::move(m1), std::move(m2), 64);
}

// deterministic random trig polynomial, band limit K, coefficient scale
inline Potential random_potential(int K, double scale, unsigned seed, bool real_type = false)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    ModeMap m1, m2;
    for (int n = -K; n <= K; ++n) {
        m1[n] = scale * cd{amp(rng), amp(rng)};
        m2[n] = scale * cd{amp(rng), amp(rng)};
    }
    if (real_type) {
        m2.clear();
        for (const auto& [n, c] : m1)
            m2[-n] = std::conj(c);
    }
    return Potential::from_fourier(std::move(m1), std::move(m2), auto_grid_size(K));
}

// exp(x A) for the constant-coefficient system A = [[-i lam, i a], [-i b, i lam]]:
// closed form through cos/sinc of omega = sqrt(lam^2 - ab).
inline Mat2 constant_monodromy(cd a, cd b, double x, cd lambda)
{
    const Mat2 A{-iu * lambda, iu * a, -iu * b, iu * lambda};
    const cd w = (lambda * lambda - a * b) * (x * x);  // det(xA)
    cd C, S;
    if (std::abs(w) < 1e-6) {
        C = 1.0 - w / 2.0 + w * w / 24.0;
        S = 1.0 - w / 6.0 + w * w / 120.0;
    } else {
        const cd r = std::sqrt(w);
        C = std::cos(r);
        S = std::sin(r) / r;
    }
    return Mat2{C, 0.0, 0.0, C} + (x * S) * A;
}

// n-th Fourier coefficient by composite trapezoid quadrature (independent of FFT path)
inline cd quadrature_coefficient(const Potential& p, int comp, int n, int panels = 4096)
{
    cd sum{0.0, 0.0};
    for (int j = 0; j < panels; ++j) {
        const double x = static_cast<double>(j) / panels;
        sum += p.eval(comp, x) * std::polar(1.0, -2.0 * pi * n * x);
    }
    return sum / static_cast<double>(panels);
}

// dDelta/dlambda by the variation-of-parameters quadrature
//   dDelta = -tr int_0^1 M(1) M(t)^{-1} R M(t) dt,
// composite Simpson on the trajectory of fundamental_matrix (independent of the jet path).
inline cd quadrature_ddelta(const Potential& p, cd lambda, int panels = 256)
{
    const Mat2 M1 = fundamental_matrix(p, 1.0, lambda, 1e-12);
    const Mat2 R = R_mat();
    const auto integrand = [&](double t) {
        const Mat2 Mt = fundamental_matrix(p, t, lambda, 1e-12);
        return M1 * Mt.adj() * R * Mt;  // adj == inverse at det 1
    };
    Mat2 acc{};
    const double h = 1.0 / panels;
    for (int j = 0; j < panels; j += 2) {
        const Mat2 f0 = integrand(j * h);
        const Mat2 f1 = integrand((j + 1) * h);
        const Mat2 f2 = integrand((j + 2) * h);
        acc = acc + (h / 3.0) * (f0 + 4.0 * f1 + f2);
    }
    return -acc.trace();
}

}  // namespace zs::testing
