#include "zs/fft.hpp"

#include <stdexcept>
#include <utility>

namespace zs {

void fft(std::vector<cd>& a, int sign)
{
    const int n = static_cast<int>(a.size());
    if (!is_pow2(n))
        throw std::invalid_argument("fft: size must be a power of two");
    if (n == 1)
        return;

    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }

    for (int len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * pi / len;
        const int half = len / 2;
        for (int i = 0; i < n; i += len) {
            for (int k = 0; k < half; ++k) {
                // direct twiddle per butterfly keeps round-off at the few-eps level
                const cd w = std::polar(1.0, ang * k);
                const cd u = a[i + k];
                const cd v = a[i + k + half] * w;
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
}

}  // namespace zs
