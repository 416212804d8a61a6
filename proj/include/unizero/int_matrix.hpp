#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace unizero {

inline constexpr int kMaxDim = 8;
inline constexpr std::int64_t kMaxEntryMagnitude = std::int64_t{1} << 31;

/// Square matrix of exact integers stored row-major in fixed capacity.
///
/// Dimension is 1..kMaxDim and every entry satisfies |entry| <= 2^31; the
/// constructors throw RegimeError otherwise.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n);
  IntMatrix(int n, std::span<const std::int64_t> entries);
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(int n);

  int dim() const { return n_; }
  std::int64_t operator()(int r, int c) const { return a_[r * n_ + c]; }
  void set(int r, int c, std::int64_t v);

  std::span<const std::int64_t> flat() const { return {a_.data(), static_cast<std::size_t>(n_ * n_)}; }
  std::span<const std::int64_t> row(int r) const {
    return {a_.data() + r * n_, static_cast<std::size_t>(n_)};
  }

  std::int64_t max_abs() const;
  bool has_zero() const;
  bool all_positive() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  int n_ = 0;
  std::array<std::int64_t, kMaxDim * kMaxDim> a_{};
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& m);
IntMatrix negate(const IntMatrix& m);

}  // namespace unizero
