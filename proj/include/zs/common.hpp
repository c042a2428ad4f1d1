#pragma once

#include <complex>
#include <numbers>

namespace zs {

using cd = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cd iu{0.0, 1.0};

inline int next_pow2(int n)
{
    int m = 1;
    while (m < n)
        m <<= 1;
    return m;
}

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace zs
