#pragma once

#include <stdexcept>
#include <vector>

#include "zs/common.hpp"

namespace zs {

// Truncated formal power series over complex coefficients, fixed order.
// a[k] is the coefficient of z^k, k = 0 .. order().
class PowerSeries {
public:
    explicit PowerSeries(int order) : a_(order + 1, cd{0.0, 0.0}) {}
    PowerSeries(std::vector<cd> coeffs) : a_(std::move(coeffs))
    {
        if (a_.empty())
            throw std::invalid_argument("PowerSeries: empty coefficient list");
    }

    int order() const { return static_cast<int>(a_.size()) - 1; }
    cd& operator[](int k) { return a_[k]; }
    const cd& operator[](int k) const { return a_[k]; }

    friend PowerSeries operator+(const PowerSeries& x, const PowerSeries& y)
    {
        PowerSeries r(std::min(x.order(), y.order()));
        for (int k = 0; k <= r.order(); ++k)
            r[k] = x[k] + y[k];
        return r;
    }

    friend PowerSeries operator*(const PowerSeries& x, const PowerSeries& y)
    {
        PowerSeries r(std::min(x.order(), y.order()));
        for (int i = 0; i <= r.order(); ++i)
            for (int j = 0; i + j <= r.order(); ++j)
                r[i + j] += x[i] * y[j];
        return r;
    }

    friend PowerSeries operator*(cd s, const PowerSeries& x)
    {
        PowerSeries r = x;
        for (int k = 0; k <= r.order(); ++k)
            r[k] *= s;
        return r;
    }

    // multiplicative inverse; requires a nonzero constant term
    PowerSeries inverse() const
    {
        if (a_[0] == cd{0.0, 0.0})
            throw std::invalid_argument("PowerSeries::inverse: zero constant term");
        PowerSeries r(order());
        r[0] = 1.0 / a_[0];
        for (int k = 1; k <= order(); ++k) {
            cd s{0.0, 0.0};
            for (int j = 1; j <= k; ++j)
                s += a_[j] * r[k - j];
            r[k] = -s / a_[0];
        }
        return r;
    }

    // composition this(g(z)); requires g(0) = 0 so the truncation is consistent
    PowerSeries compose(const PowerSeries& g) const
    {
        if (g[0] != cd{0.0, 0.0})
            throw std::invalid_argument("PowerSeries::compose: inner series must vanish at 0");
        PowerSeries r(g.order());
        r[0] = a_[order()];
        for (int k = order() - 1; k >= 0; --k) {
            r = r * g;
            r[0] += a_[k];
        }
        return r;
    }

private:
    std::vector<cd> a_;
};

}  // namespace zs
