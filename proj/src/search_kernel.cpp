#include "search_kernel.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "canon_kernel.hpp"
#include "small_det.hpp"

namespace unizero::detail {

namespace {

constexpr std::uint64_t kFlushEvery = 4096;

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

// Determinant of the submatrix of `m` (row stride n) on the given rows and
// columns.
std::int64_t sub_det(const Flat& m, int n, const int* rows, const int* cols, int k) {
  std::array<std::int64_t, kMaxDim * kMaxDim> a{};
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) a[r * k + c] = m[rows[r] * n + cols[c]];
  return det_packed(a.data(), k);
}

}  // namespace

bool NodeBudget::charge(std::uint64_t nodes) {
  const std::uint64_t now = used_.fetch_add(nodes, std::memory_order_relaxed) + nodes;
  if (limit_ != 0 && now > limit_) exhausted_.store(true, std::memory_order_relaxed);
  return !exhausted();
}

void RowSearch::Forms::finish(int n, std::int64_t vmin, std::int64_t vmax) {
  for (int f = 0; f < count; ++f) {
    suffix_lo[f][n] = 0;
    suffix_hi[f][n] = 0;
    for (int j = n - 1; j >= 0; --j) {
      const std::int64_t a = coef[f][j] * vmin;
      const std::int64_t b = coef[f][j] * vmax;
      suffix_lo[f][j] = suffix_lo[f][j + 1] + std::min(a, b);
      suffix_hi[f][j] = suffix_hi[f][j + 1] + std::max(a, b);
    }
    partial[f] = 0;
  }
}

RowSearch::RowSearch(const SearchParams& params, bool keep_classes, NodeBudget* budget)
    : p_(params), keep_classes_(keep_classes), budget_(budget) {
  if (!p_.zerofree) values_.push_back(0);
  for (int v = 1; v <= p_.alpha; ++v) values_.push_back(v);
  if (!p_.positive_only)
    for (int v = 1; v <= p_.alpha; ++v) values_.push_back(-v);
  vmin_ = p_.positive_only ? 1 : -p_.alpha;
  vmax_ = p_.alpha;
}

std::vector<Prefix> RowSearch::split(int depth, std::uint64_t* nodes) {
  std::vector<Prefix> units;
  if (depth == 0) {
    units.push_back(Prefix{});
    return units;
  }
  UnitOutcome scratch;
  out_ = &scratch;
  collected_ = &units;
  stop_depth_ = depth;
  abort_ = false;
  m_.fill(0);
  descend(0);
  collected_ = nullptr;
  stop_depth_ = -1;
  out_ = nullptr;
  if (nodes != nullptr) *nodes = scratch.nodes;
  return units;
}

void RowSearch::run(const Prefix& unit, UnitOutcome& out) {
  out_ = &out;
  abort_ = false;
  unflushed_ = 0;
  m_ = unit.rows;
  descend(unit.depth);
  if (budget_ != nullptr && unflushed_ != 0) budget_->charge(unflushed_);
  unflushed_ = 0;
  out.aborted = abort_;
  out_ = nullptr;
}

bool RowSearch::charge_node() {
  ++out_->nodes;
  if (budget_ != nullptr && ++unflushed_ >= kFlushEvery) {
    if (!budget_->charge(unflushed_)) abort_ = true;
    unflushed_ = 0;
  }
  return !abort_;
}

RowSearch::Forms* RowSearch::forms_for(int level) {
  if (level == p_.n - 1) return &last_;
  if (level == p_.n - 2) return &penultimate_;
  return nullptr;
}

void RowSearch::descend(int level) {
  prepare_level(level);
  generate(level, 0, level > 0);
}

void RowSearch::prepare_level(int level) {
  const int n = p_.n;
  auto& same = same_block_[level];
  for (int j = 1; j < n; ++j) {
    bool eq = true;
    for (int r = 0; r < level && eq; ++r) eq = m_[r * n + j] == m_[r * n + j - 1];
    same[j] = eq;
  }
  if (level == n - 2) build_penultimate_forms();
  if (level == n - 1) {
    compute_last_column_cofactors();
    build_last_forms();
  }
}

// c_j = (-1)^(n-1+j) det(rows 0..n-2, columns != j), so det M = sum_j x_j c_j
// for last row x.
void RowSearch::compute_last_column_cofactors() {
  const int n = p_.n;
  std::array<int, kMaxDim> rows{};
  std::iota(rows.begin(), rows.begin() + n - 1, 0);
  for (int j = 0; j < n; ++j) {
    std::array<int, kMaxDim> cols{};
    int w = 0;
    for (int c = 0; c < n; ++c)
      if (c != j) cols[w++] = c;
    const std::int64_t d = sub_det(m_, n, rows.data(), cols.data(), n - 1);
    c_[j] = ((n - 1 + j) % 2 == 0) ? d : -d;
  }
}

// Forms giving c_j as a linear function of the penultimate row y:
// expanding along y, the coefficient of y_l is
// (-1)^(n-1+j) (-1)^(n-2+pos_j(l)) det(rows 0..n-3, columns != j,l).
void RowSearch::build_penultimate_forms() {
  const int n = p_.n;
  Forms& f = penultimate_;
  f.count = n;
  std::array<int, kMaxDim> rows{};
  std::iota(rows.begin(), rows.begin() + std::max(n - 2, 0), 0);
  for (int j = 0; j < n; ++j) {
    f.coef[j].fill(0);
    f.lo[j] = -p_.beta_hi;
    f.hi[j] = p_.beta_hi;
  }
  for (int j = 0; j < n; ++j) {
    for (int l = j + 1; l < n; ++l) {
      std::array<int, kMaxDim> cols{};
      int w = 0;
      for (int c = 0; c < n; ++c)
        if (c != j && c != l) cols[w++] = c;
      const std::int64_t d = sub_det(m_, n, rows.data(), cols.data(), n - 2);
      // pos_j(l) = l - 1 for l > j; pos_l(j) = j for j < l.
      const int sign_jl = ((n - 1 + j) + (n - 2 + (l - 1))) % 2 == 0 ? 1 : -1;
      const int sign_lj = ((n - 1 + l) + (n - 2 + j)) % 2 == 0 ? 1 : -1;
      f.coef[j][l] = sign_jl * d;
      f.coef[l][j] = sign_lj * d;
    }
  }
  f.finish(n, vmin_, vmax_);
}

// Forms for the last row x: form 0 is det M = sum_j c_j x_j, constrained to
// {-1, +1}; the rest are the cofactors C_ij (i < n-1), each linear in x with
// coefficient of x_l equal to
// (-1)^(i+j) (-1)^(n-2+pos_j(l)) det(rows != i,n-1; columns != j,l).
void RowSearch::build_last_forms() {
  const int n = p_.n;
  Forms& f = last_;
  f.count = 1 + (n - 1) * n;
  for (int j = 0; j < n; ++j) f.coef[0][j] = c_[j];
  f.lo[0] = -1;
  f.hi[0] = 1;
  for (int i = 0; i < n - 1; ++i) {
    std::array<int, kMaxDim> rows{};
    int wr = 0;
    for (int r = 0; r < n - 1; ++r)
      if (r != i) rows[wr++] = r;
    for (int j = 0; j < n; ++j) {
      const int idx = 1 + i * n + j;
      f.coef[idx].fill(0);
      f.lo[idx] = -p_.beta_hi;
      f.hi[idx] = p_.beta_hi;
    }
    for (int j = 0; j < n; ++j) {
      for (int l = j + 1; l < n; ++l) {
        std::array<int, kMaxDim> cols{};
        int w = 0;
        for (int c = 0; c < n; ++c)
          if (c != j && c != l) cols[w++] = c;
        const std::int64_t d = sub_det(m_, n, rows.data(), cols.data(), n - 2);
        const int sign_jl = ((i + j) + (n - 2 + (l - 1))) % 2 == 0 ? 1 : -1;
        const int sign_lj = ((i + l) + (n - 2 + j)) % 2 == 0 ? 1 : -1;
        f.coef[1 + i * n + j][l] = sign_jl * d;
        f.coef[1 + i * n + l][j] = sign_lj * d;
      }
    }
  }
  f.finish(n, vmin_, vmax_);
}

// Cheap necessary conditions for canonicity of the row being built:
// row 0 is nonnegative, each row's leading entry is not negative, entries
// are sorted within blocks of identical earlier columns, and each row is
// lexicographically >= the previous one.
bool RowSearch::accept_value(int level, int j, std::int64_t v, bool tight, bool& next_tight) const {
  const int n = p_.n;
  if (v < 0 && (level == 0 || j == 0)) return false;
  const std::int64_t key = structural_key(v);
  if (j > 0 && same_block_[level][j] && key < structural_key(m_[level * n + j - 1])) return false;
  next_tight = false;
  if (tight) {
    const std::int64_t prev = structural_key(m_[(level - 1) * n + j]);
    if (key < prev) return false;
    next_tight = key == prev;
  }
  return true;
}

void RowSearch::generate(int level, int j, bool tight) {
  const int n = p_.n;
  if (abort_) return;
  if (j == n) {
    row_done(level);
    return;
  }
  if (level == n - 1 && j == n - 1 && c_[n - 1] != 0) {
    solve_last_entry(tight);
    return;
  }
  Forms* forms = forms_for(level);
  for (std::int64_t v : values_) {
    bool next_tight = false;
    if (!accept_value(level, j, v, tight, next_tight)) continue;
    bool feasible = true;
    if (forms != nullptr) {
      for (int f = 0; f < forms->count; ++f) {
        forms->partial[f] += forms->coef[f][j] * v;
        if (forms->partial[f] + forms->suffix_lo[f][j + 1] > forms->hi[f] ||
            forms->partial[f] + forms->suffix_hi[f][j + 1] < forms->lo[f]) {
          feasible = false;
        }
      }
    }
    if (feasible) {
      m_[level * n + j] = v;
      generate(level, j + 1, next_tight);
    }
    if (forms != nullptr)
      for (int f = 0; f < forms->count; ++f) forms->partial[f] -= forms->coef[f][j] * v;
    if (abort_) return;
  }
  m_[level * n + j] = 0;
}

// The last entry of a unimodular matrix is fixed by det = +-1 once the rest
// of the row is known.
void RowSearch::solve_last_entry(bool tight) {
  const int n = p_.n;
  const int j = n - 1;
  std::int64_t acc = 0;
  for (int l = 0; l < n - 1; ++l) acc += c_[l] * m_[j * n + l];
  std::array<std::int64_t, 2> sols{};
  int count = 0;
  for (std::int64_t target : {std::int64_t{1}, std::int64_t{-1}}) {
    const std::int64_t num = target - acc;
    if (num % c_[j] != 0) continue;
    const std::int64_t v = num / c_[j];
    if (v < vmin_ || v > vmax_ || (p_.zerofree && v == 0)) continue;
    sols[count++] = v;
  }
  if (count == 2 && structural_key(sols[1]) < structural_key(sols[0])) std::swap(sols[0], sols[1]);
  for (int s = 0; s < count; ++s) {
    bool next_tight = false;
    if (!accept_value(j, j, sols[s], tight, next_tight)) continue;
    m_[j * n + j] = sols[s];
    row_done(j);
    if (abort_) return;
  }
  m_[j * n + j] = 0;
}

// gcd of all rows x rows minors of the first `rows` rows is 1; necessary for
// the rows to extend to a unimodular matrix.
bool RowSearch::minors_coprime(int rows) const {
  const int n = p_.n;
  std::array<int, kMaxDim> rr{};
  std::iota(rr.begin(), rr.begin() + rows, 0);
  std::array<int, kMaxDim> cols{};
  std::iota(cols.begin(), cols.begin() + rows, 0);
  std::int64_t g = 0;
  while (true) {
    g = std::gcd(g, iabs(sub_det(m_, n, rr.data(), cols.data(), rows)));
    if (g == 1) return true;
    int i = rows - 1;
    while (i >= 0 && cols[i] == n - rows + i) --i;
    if (i < 0) break;
    ++cols[i];
    for (int k = i + 1; k < rows; ++k) cols[k] = cols[k - 1] + 1;
  }
  return false;
}

void RowSearch::row_done(int level) {
  const int n = p_.n;
  const int filled = level + 1;
  if (level > 0) {
    // Row 0 carries the smallest sorted absolute-value profile of all rows.
    std::array<std::int64_t, kMaxDim> prof{};
    for (int j = 0; j < n; ++j) prof[j] = iabs(m_[level * n + j]);
    std::sort(prof.begin(), prof.begin() + n);
    for (int j = 0; j < n; ++j) {
      if (prof[j] != m_[j]) {
        if (prof[j] < m_[j]) return;
        break;
      }
    }
  }
  if (filled == n) {
    leaf();
    return;
  }
  if (filled == n - 1) {
    compute_last_column_cofactors();
    std::int64_t g = 0;
    for (int j = 0; j < n; ++j) {
      if (iabs(c_[j]) > p_.beta_hi) return;
      if (p_.zerofree && c_[j] == 0) return;
      g = std::gcd(g, iabs(c_[j]));
    }
    if (g != 1) return;
  } else if (!minors_coprime(filled)) {
    return;
  }
  if (!charge_node()) return;
  if (!is_prefix_canonical({m_.data(), filled, n})) return;
  if (filled == stop_depth_) {
    Prefix pre;
    pre.rows = m_;
    pre.depth = filled;
    for (int i = filled * n; i < n * n; ++i) pre.rows[i] = 0;
    collected_->push_back(pre);
    return;
  }
  descend(filled);
}

void RowSearch::leaf() {
  const int n = p_.n;
  const std::int64_t* x = &m_[(n - 1) * n];
  std::int64_t d = 0;
  for (int j = 0; j < n; ++j) d += c_[j] * x[j];
  if (d != 1 && d != -1) return;
  std::int64_t beta = 0;
  for (int j = 0; j < n; ++j) beta = std::max(beta, iabs(c_[j]));
  for (int f = 1; f < last_.count; ++f) {
    std::int64_t v = 0;
    for (int l = 0; l < n; ++l) v += last_.coef[f][l] * x[l];
    if (p_.zerofree && v == 0) return;
    beta = std::max(beta, iabs(v));
  }
  if (beta < p_.beta_lo || beta > p_.beta_hi) return;
  std::int64_t alpha = 0;
  bool positive = true;
  for (int i = 0; i < n * n; ++i) {
    alpha = std::max(alpha, iabs(m_[i]));
    positive &= m_[i] > 0;
  }
  if (alpha != p_.alpha) return;
  if (!charge_node()) return;
  if (!is_prefix_canonical({m_.data(), n, n})) return;

  BucketStats& b = out_->buckets[beta];
  ++b.count;
  if (positive) ++b.positive;
  if (!b.has_first) {
    b.first = m_;
    b.has_first = true;
  } else {
    const int cmp = [&] {
      for (int i = 0; i < n * n; ++i) {
        const std::int64_t ka = structural_key(m_[i]);
        const std::int64_t kb = structural_key(b.first[i]);
        if (ka != kb) return ka < kb ? -1 : 1;
      }
      return 0;
    }();
    if (cmp < 0) b.first = m_;
  }
  if (keep_classes_) out_->classes.push_back(FoundClass{m_, beta, positive});
}

}  // namespace unizero::detail
