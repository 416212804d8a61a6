#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "unizero/exact_linalg.hpp"
#include "unizero/int_matrix.hpp"

namespace unizero {

/// Total order on nonzero integers: 1 < 2 < 3 < ... < -1 < -2 < -3 < ...
/// Throws ZeroEntryError if either operand is zero.
std::strong_ordering structural_cmp(std::int64_t a, std::int64_t b);

/// Lexicographic comparison of equal-length flattenings under
/// structural_cmp. Zero is accepted and sorts first, so the unrestricted
/// search can reuse this order.
std::strong_ordering structural_lex_cmp(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

inline bool structural_less(const IntMatrix& a, const IntMatrix& b) {
  return structural_lex_cmp(a.flat(), b.flat()) < 0;
}

/// Permutation of {0..n-1} combined with a sign per coordinate.
struct SignedPermutation {
  std::vector<int> perm;
  std::vector<int> signs;

  static SignedPermutation identity(int n);
  int size() const { return static_cast<int>(perm.size()); }
  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
};

/// (P, Q) acting as M -> P M Q. Row r of the image is
/// row_signs[r] * (source row rows.perm[r]); likewise for columns.
struct GroupElement {
  SignedPermutation rows;
  SignedPermutation cols;

  static GroupElement identity(int n);
  static GroupElement random(int n, std::mt19937_64& rng);
  int size() const { return rows.size(); }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// apply(compose(g, h), m) == apply(g, apply(h, m)).
GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);

/// Throws DimensionError on size mismatch.
IntMatrix apply(const GroupElement& g, const IntMatrix& m);

/// The orbit member with minimal row-major flattening. Exact: explores every
/// tie of the row-by-row minimisation. Throws ZeroEntryError on zero entries.
IntMatrix canonical_form(const IntMatrix& m);

/// Reference route used by tests: for each of the 2^n n! column actions the
/// optimal row action is closed-form (sign each row to its smaller version,
/// then sort rows), so the whole group is covered. Rejects n > 5.
IntMatrix canonical_form_oracle(const IntMatrix& m);

/// canonical_form(m) == m, decided with early exit.
bool is_canonical(const IntMatrix& m);

bool orbit_equivalent(const IntMatrix& a, const IntMatrix& b);

/// Multiset of absolute entry values, sorted; invariant under the action.
std::vector<std::int64_t> abs_value_profile(const IntMatrix& m);

struct CanonicalClass {
  IntMatrix rep;
  ClassStats stats;

  friend bool operator==(const CanonicalClass&, const CanonicalClass&) = default;
};

/// Canonical class of a unimodular zerofree matrix; throws
/// NotUnimodularError if classify(m) is absent.
CanonicalClass make_class(const IntMatrix& m);

/// Class of rep^-1: alpha and beta swap, and applying it twice is identity.
CanonicalClass inverse_class(const CanonicalClass& c);

namespace detail {
// Canonical form under the order extended with 0 first; for the
// unrestricted search only.
IntMatrix canonical_form_with_zeros(const IntMatrix& m);
bool is_canonical_with_zeros(const IntMatrix& m);
}  // namespace detail

}  // namespace unizero
