#include "zs/potential.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "zs/fft.hpp"

namespace zs {

namespace {

int band_limit(const ModeMap& m)
{
    int K = 0;
    for (const auto& [n, c] : m)
        K = std::max(K, std::abs(n));
    return K;
}

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len)
{
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t hash_modes(std::uint64_t h, const ModeMap& m)
{
    for (const auto& [n, c] : m) {
        double buf[2] = {c.real(), c.imag()};
        h = fnv1a(h, &n, sizeof n);
        h = fnv1a(h, buf, sizeof buf);
    }
    return h;
}

}  // namespace

int auto_grid_size(int K)
{
    return next_pow2(std::max(64, 4 * K + 4));
}

std::vector<cd> synthesize(const ModeMap& modes, int M)
{
    std::vector<cd> spec(M, cd{0.0, 0.0});
    for (const auto& [n, c] : modes) {
        if (2 * std::abs(n) >= M)
            throw std::invalid_argument("synthesize: mode " + std::to_string(n) +
                                        " exceeds Nyquist limit of grid " + std::to_string(M));
        spec[(n % M + M) % M] += c;
    }
    fft(spec, +1);
    return spec;
}

ModeMap analyze(const std::vector<cd>& grid, int K)
{
    const int M = static_cast<int>(grid.size());
    std::vector<cd> spec = grid;
    fft(spec, -1);
    ModeMap out;
    for (int n = -K; n <= K; ++n) {
        cd c = spec[(n % M + M) % M] / static_cast<double>(M);
        if (std::abs(c) > 0.0)
            out[n] = c;
    }
    return out;
}

ModeMap convolve(const ModeMap& a, const ModeMap& b)
{
    ModeMap out;
    for (const auto& [n, ca] : a)
        for (const auto& [m, cb] : b)
            out[n + m] += ca * cb;
    return out;
}

Potential Potential::from_fourier(ModeMap modes1, ModeMap modes2, int grid_size)
{
    const int K = std::max(band_limit(modes1), band_limit(modes2));
    if (!is_pow2(grid_size))
        throw std::invalid_argument("from_fourier: grid_size " + std::to_string(grid_size) +
                                    " is not a power of two");
    if (grid_size < 4 * K + 4)
        throw std::invalid_argument("from_fourier: grid_size " + std::to_string(grid_size) +
                                    " too small for band limit K=" + std::to_string(K) +
                                    " (need at least " + std::to_string(4 * K + 4) + ")");
    Potential p;
    p.K_ = K;
    p.M_ = grid_size;
    p.modes1_ = std::move(modes1);
    p.modes2_ = std::move(modes2);
    p.grid1_ = synthesize(p.modes1_, grid_size);
    p.grid2_ = synthesize(p.modes2_, grid_size);

    std::uint64_t h = 1469598103934665603ULL;
    h = fnv1a(h, &p.K_, sizeof p.K_);
    h = fnv1a(h, &p.M_, sizeof p.M_);
    h = hash_modes(h, p.modes1_);
    h = hash_modes(h, p.modes2_);
    p.fingerprint_ = h;
    return p;
}

Potential Potential::zero(int grid_size)
{
    return from_fourier({}, {}, grid_size);
}

Potential Potential::constant(cd a, cd b, int grid_size)
{
    ModeMap m1, m2;
    if (a != cd{0.0, 0.0})
        m1[0] = a;
    if (b != cd{0.0, 0.0})
        m2[0] = b;
    return from_fourier(std::move(m1), std::move(m2), grid_size);
}

Potential Potential::single_mode(cd a, cd b, int grid_size)
{
    ModeMap m1, m2;
    if (a != cd{0.0, 0.0})
        m1[1] = a;
    if (b != cd{0.0, 0.0})
        m2[-1] = b;
    return from_fourier(std::move(m1), std::move(m2), grid_size);
}

const ModeMap& Potential::modes(int component) const
{
    if (component == 1)
        return modes1_;
    if (component == 2)
        return modes2_;
    throw std::invalid_argument("Potential: component must be 1 or 2");
}

const std::vector<cd>& Potential::grid(int component) const
{
    if (component == 1)
        return grid1_;
    if (component == 2)
        return grid2_;
    throw std::invalid_argument("Potential: component must be 1 or 2");
}

cd Potential::fourier_coefficient(int component, int n) const
{
    const ModeMap& m = modes(component);
    auto it = m.find(n);
    return it == m.end() ? cd{0.0, 0.0} : it->second;
}

ModeMap Potential::derivative_modes(int component, int order) const
{
    if (order < 0 || order > derivative_cap)
        throw std::invalid_argument("derivative: order " + std::to_string(order) +
                                    " outside cap " + std::to_string(derivative_cap));
    ModeMap out;
    for (const auto& [n, c] : modes(component)) {
        cd f = std::pow(cd{0.0, 2.0 * pi * n}, static_cast<double>(order));
        if (order == 0)
            f = 1.0;
        out[n] = c * f;
    }
    return out;
}

std::vector<cd> Potential::derivative(int component, int order) const
{
    return synthesize(derivative_modes(component, order), M_);
}

double Potential::sobolev_norm(int N) const
{
    double total = 0.0;
    for (int comp = 1; comp <= 2; ++comp) {
        for (const auto& [n, c] : modes(comp)) {
            const double w2 = 4.0 * pi * pi * n * n;
            double weight = 1.0, pw = 1.0;
            for (int j = 1; j <= N; ++j) {
                pw *= w2;
                weight += pw;
            }
            total += std::norm(c) * weight;
        }
    }
    return std::sqrt(total);
}

bool Potential::is_real_type(double tol) const
{
    double worst = 0.0;
    for (int n = -K_; n <= K_; ++n)
        worst = std::max(worst,
                         std::abs(fourier_coefficient(2, n) - std::conj(fourier_coefficient(1, -n))));
    return worst <= tol;
}

cd Potential::eval(int component, double x) const
{
    cd sum{0.0, 0.0};
    for (const auto& [n, c] : modes(component))
        sum += c * std::polar(1.0, 2.0 * pi * n * x);
    return sum;
}

}  // namespace zs
