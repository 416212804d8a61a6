#include "unizero/exact_linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

#include "small_det.hpp"
#include "unizero/error.hpp"

namespace unizero {

namespace {

void require_regime(const IntMatrix& m) {
  if (!in_exact_regime(m)) throw RegimeError("matrix outside exact 64-bit regime");
}

std::int64_t laplace(const std::int64_t* a, int k) {
  if (k == 1) return a[0];
  if (k == 2) return a[0] * a[3] - a[1] * a[2];
  std::array<std::int64_t, kMaxDim * kMaxDim> sub{};
  __int128 total = 0;
  for (int c = 0; c < k; ++c) {
    if (a[c] == 0) continue;
    int w = 0;
    for (int r = 1; r < k; ++r)
      for (int cc = 0; cc < k; ++cc)
        if (cc != c) sub[w++] = a[r * k + cc];
    const __int128 term = static_cast<__int128>(a[c]) * laplace(sub.data(), k - 1);
    total += (c % 2 == 0) ? term : -term;
  }
  return static_cast<std::int64_t>(total);
}

// Determinant of m with row `skip_r` and column `skip_c` removed.
std::int64_t minor_det(const IntMatrix& m, int skip_r, int skip_c) {
  const int n = m.dim();
  std::array<std::int64_t, kMaxDim * kMaxDim> sub{};
  int w = 0;
  for (int r = 0; r < n; ++r) {
    if (r == skip_r) continue;
    for (int c = 0; c < n; ++c)
      if (c != skip_c) sub[w++] = m(r, c);
  }
  return detail::det_packed(sub.data(), n - 1);
}

int sgn(std::int64_t v) { return (v > 0) - (v < 0); }

}  // namespace

bool in_exact_regime(const IntMatrix& m) {
  long double log2_bound = 0;
  for (int r = 0; r < m.dim(); ++r) {
    long double sq = 0;
    for (std::int64_t v : m.row(r)) sq += static_cast<long double>(v) * static_cast<long double>(v);
    if (sq > 1) log2_bound += 0.5L * std::log2(sq);
  }
  return log2_bound < 62.0L;
}

std::int64_t det_cofactor(const IntMatrix& m) {
  require_regime(m);
  return laplace(m.flat().data(), m.dim());
}

std::int64_t det_bareiss(const IntMatrix& m) {
  require_regime(m);
  std::array<std::int64_t, kMaxDim * kMaxDim> a{};
  std::ranges::copy(m.flat(), a.begin());
  const int n = m.dim();
  if (n <= 3) {
    // det_packed short-circuits small sizes; run the elimination explicitly.
    std::int64_t sign = 1;
    std::int64_t prev = 1;
    for (int p = 0; p < n - 1; ++p) {
      if (a[p * n + p] == 0) {
        int r = p + 1;
        while (r < n && a[r * n + p] == 0) ++r;
        if (r == n) return 0;
        for (int c = 0; c < n; ++c) std::swap(a[p * n + c], a[r * n + c]);
        sign = -sign;
      }
      for (int i = p + 1; i < n; ++i)
        for (int j = p + 1; j < n; ++j)
          a[i * n + j] = static_cast<std::int64_t>(
              (static_cast<__int128>(a[i * n + j]) * a[p * n + p] - static_cast<__int128>(a[i * n + p]) * a[p * n + j]) /
              prev);
      prev = a[p * n + p];
    }
    return sign * a[n * n - 1];
  }
  return detail::det_packed(a.data(), n);
}

std::int64_t det(const IntMatrix& m) { return m.dim() <= 3 ? det_cofactor(m) : det_bareiss(m); }

IntMatrix adjugate(const IntMatrix& m) {
  require_regime(m);
  const int n = m.dim();
  IntMatrix adj(n);
  if (n == 1) {
    adj.set(0, 0, 1);
    return adj;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::int64_t cof = ((i + j) % 2 == 0 ? 1 : -1) * minor_det(m, i, j);
      adj.set(j, i, cof);
    }
  }
  return adj;
}

IntMatrix adjugate_inverse(const IntMatrix& m) {
  const std::int64_t d = det(m);
  if (d != 1 && d != -1) throw NotUnimodularError("determinant is " + std::to_string(d) + ", not +1 or -1");
  IntMatrix adj = adjugate(m);
  return d == 1 ? adj : negate(adj);
}

bool sign_pattern_rank_one(const IntMatrix& m) {
  if (m.has_zero()) throw ZeroEntryError("sign pattern undefined for zero entries");
  const int n = m.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (sgn(m(i, j)) * sgn(m(i, 0)) * sgn(m(0, j)) * sgn(m(0, 0)) != 1) return false;
  return true;
}

std::optional<ClassStats> unimodular_stats(const IntMatrix& m) {
  require_regime(m);
  const std::int64_t d = det(m);
  if (d != 1 && d != -1) return std::nullopt;
  const IntMatrix inv = adjugate_inverse(m);
  ClassStats s;
  s.alpha = m.max_abs();
  s.beta = inv.max_abs();
  s.det_sign = static_cast<int>(d);
  s.positive = !m.has_zero() && sign_pattern_rank_one(m);
  return s;
}

std::optional<ClassStats> classify(const IntMatrix& m) {
  require_regime(m);
  if (m.has_zero()) return std::nullopt;
  auto s = unimodular_stats(m);
  if (!s) return std::nullopt;
  if (adjugate(m).has_zero()) return std::nullopt;
  return s;
}

Prop0Report verify_prop0(int n) {
  if (n < 2 || n > 4) throw DimensionError("prop0 exhaustion supports 2 <= n <= 4, got " + std::to_string(n));
  Prop0Report rep;
  rep.n = n;
  rep.divisor = std::int64_t{1} << (n - 1);
  rep.all_divisible = true;
  const int cells = n * n;
  std::array<std::int64_t, 16> e{};
  for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
    for (int i = 0; i < cells; ++i) e[i] = (mask >> i) & 1u ? -1 : 1;
    const std::int64_t d = det(IntMatrix(n, std::span<const std::int64_t>(e.data(), cells)));
    ++rep.matrices_checked;
    rep.determinants.insert(d);
    if (d % rep.divisor != 0) rep.all_divisible = false;
    if (d == 1 || d == -1) ++rep.unimodular_found;
  }
  return rep;
}

}  // namespace unizero
