#pragma once

#include <vector>

#include "zs/common.hpp"

namespace zs {

// In-place radix-2 transform, size must be a power of two.
//   sign = -1:  X_k = sum_j x_j e^{-2 pi i j k / n}   (analysis)
//   sign = +1:  X_k = sum_j x_j e^{+2 pi i j k / n}   (synthesis)
// No 1/n normalisation is applied; callers scale as needed.
void fft(std::vector<cd>& a, int sign);

}  // namespace zs
