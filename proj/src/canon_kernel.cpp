#include "canon_kernel.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <vector>

namespace unizero::detail {

namespace {

// Search state after some rows of the candidate have been placed: which
// source column (and sign) sits at each position, and the partition of
// positions into blocks of columns that agree on every placed row.
// sign == 0 means every placed entry of that column was zero, so its sign is
// still free.
struct State {
  std::array<std::uint8_t, kMaxDim> col{};
  std::array<std::int8_t, kMaxDim> sign{};
  std::uint16_t block_start = 1;  // bit p: position p opens a block
  std::uint16_t used = 0;         // source rows already placed

  bool operator==(const State&) const = default;
};

State initial_state(int n) {
  State s;
  for (int p = 0; p < n; ++p) s.col[p] = static_cast<std::uint8_t>(p);
  s.block_start = 1;
  return s;
}

// Both row signs must be tried unless every column sign is still free
// (flipping all of them is absorbed by later row signs) or the row is zero.
bool sign_matters(const State& s, const std::int64_t* row, int n) {
  bool any_fixed = false;
  bool any_nonzero = false;
  for (int p = 0; p < n; ++p) {
    any_fixed |= s.sign[p] != 0;
    any_nonzero |= row[s.col[p]] != 0;
  }
  return any_fixed && any_nonzero;
}

// Places source row `row` with sign t: sorts entries within each block and
// refines the partition. Writes the resulting candidate row to vals.
void place_row(const State& s, const std::int64_t* row, int n, int t, std::int64_t* vals, State& out) {
  out = s;
  std::array<std::int64_t, kMaxDim> key{};
  for (int p = 0; p < n; ++p) {
    const std::int64_t v = row[s.col[p]];
    vals[p] = s.sign[p] == 0 ? std::llabs(v) : t * s.sign[p] * v;
    key[p] = structural_key(vals[p]);
    if (s.sign[p] == 0 && v != 0) out.sign[p] = static_cast<std::int8_t>(v > 0 ? t : -t);
  }
  int b = 0;
  std::uint16_t starts = 0;
  while (b < n) {
    int e = b + 1;
    while (e < n && !((s.block_start >> e) & 1u)) ++e;
    for (int i = b + 1; i < e; ++i) {
      int j = i;
      while (j > b && key[j - 1] > key[j]) {
        std::swap(key[j - 1], key[j]);
        std::swap(vals[j - 1], vals[j]);
        std::swap(out.col[j - 1], out.col[j]);
        std::swap(out.sign[j - 1], out.sign[j]);
        --j;
      }
    }
    starts |= static_cast<std::uint16_t>(1u << b);
    for (int i = b + 1; i < e; ++i)
      if (key[i] != key[i - 1]) starts |= static_cast<std::uint16_t>(1u << i);
    b = e;
  }
  out.block_start = starts;
}

// Orders positions within each block by (col, sign) so states that differ
// only by an intra-block permutation compare equal.
void normalize(State& s, int n) {
  int b = 0;
  while (b < n) {
    int e = b + 1;
    while (e < n && !((s.block_start >> e) & 1u)) ++e;
    for (int i = b + 1; i < e; ++i) {
      int j = i;
      while (j > b && s.col[j - 1] > s.col[j]) {
        std::swap(s.col[j - 1], s.col[j]);
        std::swap(s.sign[j - 1], s.sign[j]);
        --j;
      }
    }
    b = e;
  }
}

int lex_compare(const std::int64_t* a, const std::int64_t* b, int n) {
  for (int p = 0; p < n; ++p) {
    const std::int64_t ka = structural_key(a[p]);
    const std::int64_t kb = structural_key(b[p]);
    if (ka != kb) return ka < kb ? -1 : 1;
  }
  return 0;
}

bool smaller_exists(const MatrixView& m, int level, const State& s) {
  if (level == m.rows) return false;
  const int n = m.n;
  const std::int64_t* target = m.data + level * n;
  std::array<std::int64_t, kMaxDim> cand{};
  State next;
  for (int i = 0; i < m.rows; ++i) {
    if ((s.used >> i) & 1u) continue;
    const std::int64_t* row = m.data + i * n;
    const int signs = sign_matters(s, row, n) ? 2 : 1;
    for (int si = 0; si < signs; ++si) {
      place_row(s, row, n, si == 0 ? 1 : -1, cand.data(), next);
      const int c = lex_compare(cand.data(), target, n);
      if (c < 0) return true;
      if (c == 0) {
        next.used = static_cast<std::uint16_t>(s.used | (1u << i));
        if (smaller_exists(m, level + 1, next)) return true;
      }
    }
  }
  return false;
}

}  // namespace

bool is_prefix_canonical(MatrixView m) { return !smaller_exists(m, 0, initial_state(m.n)); }

void canonical_flattening(MatrixView m, std::int64_t* out) {
  const int n = m.n;
  std::vector<State> frontier{initial_state(n)};
  std::vector<State> next;
  std::array<std::int64_t, kMaxDim> best{};
  std::array<std::int64_t, kMaxDim> cand{};
  for (int level = 0; level < m.rows; ++level) {
    next.clear();
    bool have = false;
    for (const State& s : frontier) {
      for (int i = 0; i < m.rows; ++i) {
        if ((s.used >> i) & 1u) continue;
        const std::int64_t* row = m.data + i * n;
        const int signs = sign_matters(s, row, n) ? 2 : 1;
        for (int si = 0; si < signs; ++si) {
          State ns;
          place_row(s, row, n, si == 0 ? 1 : -1, cand.data(), ns);
          ns.used = static_cast<std::uint16_t>(s.used | (1u << i));
          const int c = have ? lex_compare(cand.data(), best.data(), n) : -1;
          if (c < 0) {
            best = cand;
            have = true;
            next.clear();
          }
          if (c <= 0) {
            normalize(ns, n);
            if (std::find(next.begin(), next.end(), ns) == next.end()) next.push_back(ns);
          }
        }
      }
    }
    std::copy_n(best.begin(), n, out + level * n);
    frontier.swap(next);
  }
}

}  // namespace unizero::detail
