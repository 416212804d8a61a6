#include "unizero/int_matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "unizero/error.hpp"

namespace unizero {

namespace {

void check_dim(int n) {
  if (n < 1 || n > kMaxDim) {
    throw RegimeError("matrix dimension " + std::to_string(n) + " outside 1.." + std::to_string(kMaxDim));
  }
}

void check_entry(std::int64_t v) {
  if (v > kMaxEntryMagnitude || v < -kMaxEntryMagnitude) {
    throw RegimeError("entry " + std::to_string(v) + " exceeds 2^31 in magnitude");
  }
}

}  // namespace

IntMatrix::IntMatrix(int n) : n_(n) { check_dim(n); }

IntMatrix::IntMatrix(int n, std::span<const std::int64_t> entries) : n_(n) {
  check_dim(n);
  if (entries.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw DimensionError("expected " + std::to_string(n * n) + " entries, got " + std::to_string(entries.size()));
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    check_entry(entries[i]);
    a_[i] = entries[i];
  }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : n_(static_cast<int>(rows.size())) {
  check_dim(n_);
  int r = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_) throw DimensionError("matrix is not square");
    int c = 0;
    for (std::int64_t v : row) {
      check_entry(v);
      a_[r * n_ + c++] = v;
    }
    ++r;
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m.a_[i * n + i] = 1;
  return m;
}

void IntMatrix::set(int r, int c, std::int64_t v) {
  if (r < 0 || r >= n_ || c < 0 || c >= n_) throw DimensionError("index out of range");
  check_entry(v);
  a_[r * n_ + c] = v;
}

std::int64_t IntMatrix::max_abs() const {
  std::int64_t best = 0;
  for (std::int64_t v : flat()) best = std::max(best, v < 0 ? -v : v);
  return best;
}

bool IntMatrix::has_zero() const {
  return std::ranges::any_of(flat(), [](std::int64_t v) { return v == 0; });
}

bool IntMatrix::all_positive() const {
  return std::ranges::all_of(flat(), [](std::int64_t v) { return v > 0; });
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.n_ == b.n_ && std::ranges::equal(a.flat(), b.flat());
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("dimension mismatch in multiply");
  const int n = a.dim();
  IntMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      __int128 s = 0;
      for (int k = 0; k < n; ++k) s += static_cast<__int128>(a(i, k)) * b(k, j);
      if (s > kMaxEntryMagnitude || s < -kMaxEntryMagnitude) throw RegimeError("product entry out of range");
      out.set(i, j, static_cast<std::int64_t>(s));
    }
  }
  return out;
}

IntMatrix transpose(const IntMatrix& m) {
  IntMatrix out(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) out.set(j, i, m(i, j));
  return out;
}

IntMatrix negate(const IntMatrix& m) {
  IntMatrix out(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) out.set(i, j, -m(i, j));
  return out;
}

}  // namespace unizero
