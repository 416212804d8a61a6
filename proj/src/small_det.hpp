#pragma once

#include <cstdint>
#include <utility>

namespace unizero::detail {

// Determinant of a packed k x k row-major array; the array is overwritten.
// Fraction-free elimination: every stored intermediate is a minor of the
// input, and products are formed in 128 bits before the exact division.
inline std::int64_t det_packed(std::int64_t* a, int k) {
  switch (k) {
    case 0:
      return 1;
    case 1:
      return a[0];
    case 2:
      return a[0] * a[3] - a[1] * a[2];
    case 3:
      return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
             a[2] * (a[3] * a[7] - a[4] * a[6]);
    default:
      break;
  }
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (int p = 0; p < k - 1; ++p) {
    if (a[p * k + p] == 0) {
      int r = p + 1;
      while (r < k && a[r * k + p] == 0) ++r;
      if (r == k) return 0;
      for (int c = 0; c < k; ++c) std::swap(a[p * k + c], a[r * k + c]);
      sign = -sign;
    }
    const __int128 pivot = a[p * k + p];
    for (int i = p + 1; i < k; ++i) {
      const __int128 lead = a[i * k + p];
      for (int j = p + 1; j < k; ++j) {
        const __int128 num = a[i * k + j] * pivot - lead * a[p * k + j];
        a[i * k + j] = static_cast<std::int64_t>(num / prev);
      }
    }
    prev = a[p * k + p];
  }
  return sign * a[k * k - 1];
}

}  // namespace unizero::detail
