#include "unizero/canonical.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "canon_kernel.hpp"
#include "unizero/error.hpp"

namespace unizero {

namespace {

void reject_zero(const IntMatrix& m) {
  if (m.has_zero()) throw ZeroEntryError("structural ordering is undefined on zero entries");
}

detail::MatrixView view(const IntMatrix& m) { return {m.flat().data(), m.dim(), m.dim()}; }

}  // namespace

std::strong_ordering structural_cmp(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) throw ZeroEntryError("structural_cmp: zero operand");
  return detail::structural_key(a) <=> detail::structural_key(b);
}

std::strong_ordering structural_lex_cmp(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  const std::size_t len = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) {
    const auto c = detail::structural_key(a[i]) <=> detail::structural_key(b[i]);
    if (c != 0) return c;
  }
  return a.size() <=> b.size();
}

SignedPermutation SignedPermutation::identity(int n) {
  SignedPermutation p;
  p.perm.resize(n);
  std::iota(p.perm.begin(), p.perm.end(), 0);
  p.signs.assign(n, 1);
  return p;
}

GroupElement GroupElement::identity(int n) { return {SignedPermutation::identity(n), SignedPermutation::identity(n)}; }

GroupElement GroupElement::random(int n, std::mt19937_64& rng) {
  GroupElement g = identity(n);
  std::shuffle(g.rows.perm.begin(), g.rows.perm.end(), rng);
  std::shuffle(g.cols.perm.begin(), g.cols.perm.end(), rng);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < n; ++i) {
    g.rows.signs[i] = coin(rng) ? -1 : 1;
    g.cols.signs[i] = coin(rng) ? -1 : 1;
  }
  return g;
}

namespace {

SignedPermutation compose_side(const SignedPermutation& g, const SignedPermutation& h) {
  SignedPermutation out;
  const int n = g.size();
  out.perm.resize(n);
  out.signs.resize(n);
  for (int r = 0; r < n; ++r) {
    out.perm[r] = h.perm[g.perm[r]];
    out.signs[r] = g.signs[r] * h.signs[g.perm[r]];
  }
  return out;
}

SignedPermutation inverse_side(const SignedPermutation& g) {
  SignedPermutation out;
  const int n = g.size();
  out.perm.resize(n);
  out.signs.resize(n);
  for (int r = 0; r < n; ++r) out.perm[g.perm[r]] = r;
  for (int r = 0; r < n; ++r) out.signs[r] = g.signs[out.perm[r]];
  return out;
}

}  // namespace

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  if (g.size() != h.size()) throw DimensionError("compose: size mismatch");
  return {compose_side(g.rows, h.rows), compose_side(g.cols, h.cols)};
}

GroupElement inverse(const GroupElement& g) { return {inverse_side(g.rows), inverse_side(g.cols)}; }

IntMatrix apply(const GroupElement& g, const IntMatrix& m) {
  const int n = m.dim();
  if (g.rows.size() != n || g.cols.size() != n) {
    throw DimensionError("group element of size " + std::to_string(g.rows.size()) + " applied to " +
                         std::to_string(n) + "x" + std::to_string(n) + " matrix");
  }
  IntMatrix out(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      out.set(r, c, g.rows.signs[r] * g.cols.signs[c] * m(g.rows.perm[r], g.cols.perm[c]));
  return out;
}

IntMatrix canonical_form(const IntMatrix& m) {
  reject_zero(m);
  return detail::canonical_form_with_zeros(m);
}

IntMatrix canonical_form_oracle(const IntMatrix& m) {
  const int n = m.dim();
  if (n > 5) throw DimensionError("oracle canonicalisation limited to n <= 5");
  reject_zero(m);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::array<std::int64_t, 25> best{};
  std::array<std::int64_t, 25> cand{};
  std::array<std::array<std::int64_t, 5>, 5> rows{};
  bool have = false;
  auto row_less = [n](const std::array<std::int64_t, 5>& a, const std::array<std::int64_t, 5>& b) {
    return structural_lex_cmp({a.data(), static_cast<std::size_t>(n)}, {b.data(), static_cast<std::size_t>(n)}) < 0;
  };
  do {
    for (std::uint32_t signs = 0; signs < (1u << n); ++signs) {
      for (int r = 0; r < n; ++r) {
        std::array<std::int64_t, 5> pos{};
        std::array<std::int64_t, 5> neg{};
        for (int c = 0; c < n; ++c) {
          const std::int64_t v = ((signs >> c) & 1u ? -1 : 1) * m(r, perm[c]);
          pos[c] = v;
          neg[c] = -v;
        }
        rows[r] = row_less(neg, pos) ? neg : pos;
      }
      std::sort(rows.begin(), rows.begin() + n, row_less);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) cand[r * n + c] = rows[r][c];
      const std::size_t len = static_cast<std::size_t>(n * n);
      if (!have || structural_lex_cmp({cand.data(), len}, {best.data(), len}) < 0) {
        best = cand;
        have = true;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return IntMatrix(n, std::span<const std::int64_t>(best.data(), static_cast<std::size_t>(n * n)));
}

bool is_canonical(const IntMatrix& m) {
  reject_zero(m);
  return detail::is_prefix_canonical(view(m));
}

bool orbit_equivalent(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("orbit_equivalent: dimension mismatch");
  reject_zero(a);
  reject_zero(b);
  if (abs_value_profile(a) != abs_value_profile(b)) return false;
  return canonical_form(a) == canonical_form(b);
}

std::vector<std::int64_t> abs_value_profile(const IntMatrix& m) {
  std::vector<std::int64_t> v;
  v.reserve(m.flat().size());
  for (std::int64_t x : m.flat()) v.push_back(x < 0 ? -x : x);
  std::sort(v.begin(), v.end());
  return v;
}

CanonicalClass make_class(const IntMatrix& m) {
  const auto stats = classify(m);
  if (!stats) throw NotUnimodularError("matrix is not unimodular zerofree");
  CanonicalClass c{canonical_form(m), *stats};
  c.stats.positive = c.rep.all_positive();
  c.stats.det_sign = static_cast<int>(det(c.rep));
  return c;
}

CanonicalClass inverse_class(const CanonicalClass& c) { return make_class(adjugate_inverse(c.rep)); }

namespace detail {

IntMatrix canonical_form_with_zeros(const IntMatrix& m) {
  const int n = m.dim();
  std::array<std::int64_t, kMaxDim * kMaxDim> out{};
  canonical_flattening(view(m), out.data());
  return IntMatrix(n, std::span<const std::int64_t>(out.data(), static_cast<std::size_t>(n * n)));
}

bool is_canonical_with_zeros(const IntMatrix& m) { return is_prefix_canonical(view(m)); }

}  // namespace detail

}  // namespace unizero
