#pragma once

#include <cstdint>

#include "unizero/int_matrix.hpp"

namespace unizero::detail {

// Sort key realising 1 < 2 < ... < -1 < -2 < ...; zero sorts before
// everything (only reachable from the unrestricted search).
inline std::int64_t structural_key(std::int64_t v) {
  if (v > 0) return v;
  if (v == 0) return 0;
  return (std::int64_t{1} << 40) - v;
}

// A rows x n block of a row-major matrix with row stride n.
struct MatrixView {
  const std::int64_t* data;
  int rows;
  int n;
};

// True iff no signed row/column permutation of the view yields a
// lexicographically smaller flattening. Zeros are allowed.
bool is_prefix_canonical(MatrixView m);

// Writes the minimal flattening (rows * n entries) of the view to out.
void canonical_flattening(MatrixView m, std::int64_t* out);

}  // namespace unizero::detail
