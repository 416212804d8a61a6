#pragma once

#include <cstdint>
#include <vector>

#include "unizero/int_matrix.hpp"

namespace unizero {

/// Euler's phi: number of 1 <= j <= k with gcd(j, k) = 1.
std::int64_t totient(std::int64_t k);

/// Inverse of b modulo k; requires gcd(b, k) = 1 and k >= 2.
std::int64_t mod_inverse(std::int64_t b, std::int64_t k);

/// Number of 2x2 classes with alpha = beta = k, namely 2 phi(k) - 1.
std::int64_t prop5_count(std::int64_t k);

/// Label (epsilon, b) of a 2x2 matrix [[a, b], [c, k]] with
/// a, b, c in [1, k-1] and det = epsilon.
struct Prop5Label {
  int epsilon = 1;
  std::int64_t b = 1;
  std::int64_t k = 2;

  friend bool operator==(const Prop5Label&, const Prop5Label&) = default;
};

struct Prop5Matrix {
  Prop5Label label;
  IntMatrix matrix;
};

/// Builds [[a, b], [c, k]] from its label: c is -epsilon b^-1 mod k taken in
/// [1, k-1] and a = (epsilon + b c) / k. One matrix per realizable label;
/// (-1, 1) is skipped because it forces a = 0. Order: epsilon = -1 first,
/// then ascending b.
std::vector<Prop5Matrix> prop5_enumerate(std::int64_t k);

/// Matrix for a single label; throws Error if the label is not realizable.
IntMatrix prop5_matrix(const Prop5Label& label);

}  // namespace unizero
