#include "zs/wkb.hpp"

#include <stdexcept>
#include <string>

#include "zs/fft.hpp"

namespace zs {

namespace {

// spectral derivative of samples on a uniform grid of size M (band limited data)
std::vector<cd> spectral_derivative(const std::vector<cd>& g)
{
    const int M = static_cast<int>(g.size());
    std::vector<cd> spec = g;
    fft(spec, -1);
    for (int k = 0; k < M; ++k) {
        const int n = k <= M / 2 ? k : k - M;
        // zero the Nyquist bin; data is kept well below it by oversampling
        spec[k] *= n == M / 2 ? cd{0.0, 0.0} : cd{0.0, 2.0 * pi * n} / static_cast<double>(M);
    }
    fft(spec, +1);
    return spec;
}

cd grid_mean(const std::vector<cd>& g)
{
    cd s{0.0, 0.0};
    for (const cd& v : g)
        s += v;
    return s / static_cast<double>(g.size());
}

}  // namespace

WkbTable wkb_coefficients(const Potential& p, int order)
{
    if (order < 1 || order > wkb_order_cap)
        throw std::invalid_argument("wkb_coefficients: order " + std::to_string(order) +
                                    " outside [1, " + std::to_string(wkb_order_cap) + "]");

    // band width of r_k grows like k*K; keep everything below Nyquist on the work grid
    const int K = std::max(1, p.max_mode());
    const int M = std::max(p.grid_size(), next_pow2(2 * (order + 2) * K + 4));

    const std::vector<cd> phi1 = synthesize(p.modes(1), M);
    const std::vector<cd> phi2 = synthesize(p.modes(2), M);

    WkbTable t;
    t.order = order;
    t.grid_size = M;
    const int count = order + 1;
    t.r.resize(count);
    t.s.resize(count);
    t.I.resize(count);
    t.J.resize(count);

    // r_1 = -phi2, s_1 = -phi1
    t.r[0].resize(M);
    t.s[0].resize(M);
    for (int j = 0; j < M; ++j) {
        t.r[0][j] = -phi2[j];
        t.s[0][j] = -phi1[j];
    }

    for (int idx = 1; idx < count; ++idx) {
        const int n = idx;  // building r_{n+1} from r_1..r_n
        std::vector<cd> rn = spectral_derivative(t.r[idx - 1]);
        std::vector<cd> sn = spectral_derivative(t.s[idx - 1]);
        for (int j = 0; j < M; ++j)
            sn[j] = -sn[j];
        if (n >= 2) {
            for (int k = 1; k <= n - 1; ++k) {
                const auto& rk = t.r[k - 1];
                const auto& rnk = t.r[n - k - 1];
                const auto& sk = t.s[k - 1];
                const auto& snk = t.s[n - k - 1];
                for (int j = 0; j < M; ++j) {
                    rn[j] += phi1[j] * rk[j] * rnk[j];
                    sn[j] += phi2[j] * sk[j] * snk[j];
                }
            }
        }
        t.r[idx] = std::move(rn);
        t.s[idx] = std::move(sn);
    }

    std::vector<cd> prod(M);
    for (int idx = 0; idx < count; ++idx) {
        for (int j = 0; j < M; ++j)
            prod[j] = phi1[j] * t.r[idx][j];
        t.I[idx] = grid_mean(prod);
        for (int j = 0; j < M; ++j)
            prod[j] = phi2[j] * t.s[idx][j];
        t.J[idx] = grid_mean(prod);
    }
    return t;
}

double vanishing_defect(const WkbTable& t)
{
    double worst = 0.0;
    for (std::size_t k = 0; k < t.I.size(); ++k)
        worst = std::max(worst, std::abs(t.I[k] - t.J[k]));
    return worst;
}

cd theta_n(const WkbTable& t, cd lambda)
{
    if (lambda == cd{0.0, 0.0})
        throw std::invalid_argument("theta_n: lambda must be nonzero");
    cd sum{0.0, 0.0};
    cd pw{1.0, 0.0};
    const cd inv = 1.0 / (2.0 * iu * lambda);
    for (int k = 1; k <= t.order; ++k) {
        pw *= inv;
        sum += t.I[k - 1] * pw;
    }
    return lambda + iu * sum;
}

}  // namespace zs
