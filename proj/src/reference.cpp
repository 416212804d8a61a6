#include "unizero/reference.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "unizero/error.hpp"
#include "unizero/exact_linalg.hpp"

namespace unizero::reference {

namespace {

std::vector<std::array<std::int64_t, 3>> all_rows(int n, int alpha, bool allow_zero) {
  std::vector<std::int64_t> vals;
  for (int v = -alpha; v <= alpha; ++v)
    if (v != 0 || allow_zero) vals.push_back(v);
  std::vector<std::array<std::int64_t, 3>> rows;
  std::array<std::size_t, 3> idx{};
  while (true) {
    std::array<std::int64_t, 3> r{};
    for (int j = 0; j < n; ++j) r[j] = vals[idx[j]];
    rows.push_back(r);
    int j = n - 1;
    while (j >= 0 && ++idx[j] == vals.size()) idx[j--] = 0;
    if (j < 0) break;
  }
  return rows;
}

// Visits every matrix whose determinant is +-1. For n = 3 the first two
// rows fix the cross product, so the last row costs one dot product.
template <typename Visit>
void for_each_unimodular(int n, int alpha, bool allow_zero, Visit&& visit) {
  if (n < 1 || n > 3) throw DimensionError("naive reference supports n <= 3");
  const auto rows = all_rows(n, alpha, allow_zero);
  std::array<std::int64_t, 9> e{};
  auto emit = [&] { visit(IntMatrix(n, std::span<const std::int64_t>(e.data(), static_cast<std::size_t>(n * n)))); };
  if (n == 1) {
    for (const auto& a : rows) {
      e[0] = a[0];
      if (a[0] == 1 || a[0] == -1) emit();
    }
    return;
  }
  if (n == 2) {
    for (const auto& a : rows)
      for (const auto& b : rows) {
        const std::int64_t d = a[0] * b[1] - a[1] * b[0];
        if (d != 1 && d != -1) continue;
        e = {a[0], a[1], b[0], b[1]};
        emit();
      }
    return;
  }
  for (const auto& a : rows) {
    for (const auto& b : rows) {
      const std::int64_t c0 = a[1] * b[2] - a[2] * b[1];
      const std::int64_t c1 = a[2] * b[0] - a[0] * b[2];
      const std::int64_t c2 = a[0] * b[1] - a[1] * b[0];
      for (const auto& c : rows) {
        const std::int64_t d = c0 * c[0] + c1 * c[1] + c2 * c[2];
        if (d != 1 && d != -1) continue;
        e = {a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]};
        emit();
      }
    }
  }
}

}  // namespace

std::vector<CanonicalClass> naive_classes(int n, int alpha) {
  std::vector<CanonicalClass> out;
  std::set<std::vector<std::int64_t>> seen;
  for_each_unimodular(n, alpha, false, [&](const IntMatrix& m) {
    // Orbit minima have a positive, nondecreasing first row; skipping the
    // rest only avoids redundant oracle calls.
    for (int j = 0; j < n; ++j)
      if (m(0, j) < 0 || (j > 0 && m(0, j) < m(0, j - 1))) return;
    const auto stats = classify(m);
    if (!stats) return;
    IntMatrix rep = canonical_form_oracle(m);
    std::vector<std::int64_t> key(rep.flat().begin(), rep.flat().end());
    if (!seen.insert(key).second) return;
    ClassStats s = *stats;
    s.positive = rep.all_positive();
    s.det_sign = static_cast<int>(det(rep));
    out.push_back({rep, s});
  });
  std::sort(out.begin(), out.end(),
            [](const CanonicalClass& a, const CanonicalClass& b) { return structural_less(a.rep, b.rep); });
  return out;
}

std::int64_t naive_max_beta(int n, int alpha, SearchMode mode) {
  std::int64_t best = 0;
  const bool zerofree = mode == SearchMode::kZerofree;
  for_each_unimodular(n, alpha, !zerofree, [&](const IntMatrix& m) {
    if (m.max_abs() != alpha) return;
    const auto stats = zerofree ? classify(m) : unimodular_stats(m);
    if (stats) best = std::max(best, stats->beta);
  });
  return best;
}

}  // namespace unizero::reference

namespace unizero::reference {

IntMatrix random_zerofree(int n, int bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> mag(1, bound);
  std::bernoulli_distribution neg(0.5);
  IntMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, neg(rng) ? -mag(rng) : mag(rng));
  return m;
}

OracleAgreement oracle_agreement(int n, int samples, int bound, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  OracleAgreement a{n, samples, 0};
  for (int s = 0; s < samples; ++s) {
    const IntMatrix m = random_zerofree(n, bound, rng);
    if (canonical_form(m) != canonical_form_oracle(m)) ++a.mismatches;
  }
  return a;
}

}  // namespace unizero::reference
