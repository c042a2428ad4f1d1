#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "zs/common.hpp"

namespace zs {

// Fourier coefficients keyed by mode index, convention  u^(n) = int_0^1 u(x) e^{-2 pi i n x} dx,
// so that  u(x) = sum_n u^(n) e^{2 pi i n x}.
using ModeMap = std::map<int, cd>;

// 1-periodic two-component potential (phi1, phi2) held as matched Fourier-mode and
// uniform-grid representations.  Bandlimited by construction: K is the largest stored
// |mode index|, the grid has M = grid_size() samples at x_j = j/M with M a power of two
// and M >= 4K+4, which keeps products of two factors and one derivative alias-free.
// Immutable after construction; all operations are pure.
class Potential {
public:
    static Potential from_fourier(ModeMap modes1, ModeMap modes2, int grid_size);

    // presets
    static Potential zero(int grid_size = 64);
    // phi1 = a, phi2 = b
    static Potential constant(cd a, cd b, int grid_size = 64);
    // phi1 = a e^{2 pi i x}, phi2 = b e^{-2 pi i x}
    static Potential single_mode(cd a, cd b, int grid_size = 64);

    int max_mode() const { return K_; }
    int grid_size() const { return M_; }

    const ModeMap& modes(int component) const;
    const std::vector<cd>& grid(int component) const;

    // Stored mode, 0 for any |n| outside the band (bandlimited representation).
    cd fourier_coefficient(int component, int n) const;

    // Spectral derivative sampled on the grid: mode n multiplied by (2 pi i n)^order.
    // order <= derivative_cap.
    std::vector<cd> derivative(int component, int order) const;
    ModeMap derivative_modes(int component, int order) const;

    // Product-space Sobolev norm: sqrt(|phi1|_{H^N}^2 + |phi2|_{H^N}^2) via Parseval.
    double sobolev_norm(int N) const;

    // true iff phi2 == conj(phi1), i.e. max_n |modes2(n) - conj(modes1(-n))| <= tol.
    bool is_real_type(double tol = 1e-12) const;

    // Direct mode sum at arbitrary x (not restricted to grid points).
    cd eval(int component, double x) const;

    std::uint64_t fingerprint() const { return fingerprint_; }

    static constexpr int derivative_cap = 8;

private:
    Potential() = default;

    int K_ = 0;
    int M_ = 0;
    ModeMap modes1_, modes2_;
    std::vector<cd> grid1_, grid2_;
    std::uint64_t fingerprint_ = 0;
};

// Smallest valid power-of-two grid for a band limit K (at least 64 for headroom).
int auto_grid_size(int K);

// Mode-space product (convolution of coefficient maps).
ModeMap convolve(const ModeMap& a, const ModeMap& b);

// Synthesize grid samples of length M from a mode map (requires M > 2*K).
std::vector<cd> synthesize(const ModeMap& modes, int M);

// Exact modes of a sampled bandlimited function, band limited to |n| <= K < M/2.
ModeMap analyze(const std::vector<cd>& grid, int K);

}  // namespace zs
