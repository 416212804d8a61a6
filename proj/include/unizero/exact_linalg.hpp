#pragma once

#include <cstdint>
#include <optional>
#include <set>

#include "unizero/int_matrix.hpp"

namespace unizero {

/// Max absolute entries of a unimodular matrix and its inverse.
struct ClassStats {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  int det_sign = 1;
  // True iff the canonical representative has only positive entries.
  bool positive = false;

  friend bool operator==(const ClassStats&, const ClassStats&) = default;
};

/// True when the Hadamard bound guarantees every minor of m fits in 62 bits.
bool in_exact_regime(const IntMatrix& m);

/// Laplace expansion along the first row. Exponential; meant for n <= 3 and
/// as a cross-check for the elimination route.
std::int64_t det_cofactor(const IntMatrix& m);

/// Fraction-free (Bareiss) elimination with 128-bit intermediate products.
std::int64_t det_bareiss(const IntMatrix& m);

/// Cofactor expansion for n <= 3, Bareiss otherwise. Throws RegimeError
/// outside the exact regime.
std::int64_t det(const IntMatrix& m);

/// Transpose of the cofactor matrix.
IntMatrix adjugate(const IntMatrix& m);

/// Exact inverse of a unimodular matrix; throws NotUnimodularError when
/// det(m) is not +1 or -1.
IntMatrix adjugate_inverse(const IntMatrix& m);

/// Whether sign(m_ij) factors as r_i * c_j, i.e. some member of the
/// signed-permutation orbit of m is entrywise positive. Requires no zeros.
bool sign_pattern_rank_one(const IntMatrix& m);

/// Present iff m is unimodular and neither m nor m^-1 has a zero entry.
std::optional<ClassStats> classify(const IntMatrix& m);

/// Stats for any unimodular matrix, zeros allowed; absent when |det| != 1.
std::optional<ClassStats> unimodular_stats(const IntMatrix& m);

struct Prop0Report {
  int n = 0;
  std::uint64_t matrices_checked = 0;
  std::int64_t divisor = 0;  // 2^(n-1)
  bool all_divisible = false;
  std::uint64_t unimodular_found = 0;
  std::set<std::int64_t> determinants;

  bool holds() const { return all_divisible && unimodular_found == 0; }
};

/// Exhausts every n x n matrix with entries in {-1, +1}, 2 <= n <= 4.
Prop0Report verify_prop0(int n);

}  // namespace unizero
