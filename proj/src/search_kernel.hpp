#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <vector>

#include "unizero/int_matrix.hpp"

namespace unizero::detail {

using Flat = std::array<std::int64_t, kMaxDim * kMaxDim>;

struct SearchParams {
  int n = 0;
  int alpha = 0;
  std::int64_t beta_lo = 0;
  std::int64_t beta_hi = 0;
  bool positive_only = false;
  bool zerofree = true;
};

struct FoundClass {
  Flat entries{};
  std::int64_t beta = 0;
  bool positive = false;
};

struct BucketStats {
  std::uint64_t count = 0;
  std::uint64_t positive = 0;
  bool has_first = false;
  Flat first{};  // structurally smallest representative seen
};

struct UnitOutcome {
  std::uint64_t nodes = 0;
  std::map<std::int64_t, BucketStats> buckets;
  std::vector<FoundClass> classes;
  bool aborted = false;
};

// Row prefix that roots one independent work unit.
struct Prefix {
  Flat rows{};
  int depth = 0;
};

// Shared node counter; limit 0 means unlimited.
class NodeBudget {
 public:
  explicit NodeBudget(std::uint64_t limit = 0) : limit_(limit) {}
  // Returns false once the limit has been crossed.
  bool charge(std::uint64_t nodes);
  bool exhausted() const { return exhausted_.load(std::memory_order_relaxed); }
  std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
  std::atomic<bool> exhausted_{false};
};

// Orderly generation of canonical unimodular matrices, one row at a time.
// Not thread-safe; use one instance per worker.
class RowSearch {
 public:
  RowSearch(const SearchParams& params, bool keep_classes, NodeBudget* budget);

  // Canonical prefixes with `depth` rows that pass every pruning test, in
  // structural order.
  std::vector<Prefix> split(int depth, std::uint64_t* nodes = nullptr);

  void run(const Prefix& unit, UnitOutcome& out);

 private:
  static constexpr int kMaxForms = kMaxDim * kMaxDim + 1;

  // Linear forms in the entries of the row being generated, with bounds.
  struct Forms {
    int count = 0;
    std::array<std::array<std::int64_t, kMaxDim>, kMaxForms> coef{};
    std::array<std::array<std::int64_t, kMaxDim + 1>, kMaxForms> suffix_lo{};
    std::array<std::array<std::int64_t, kMaxDim + 1>, kMaxForms> suffix_hi{};
    std::array<std::int64_t, kMaxForms> lo{};
    std::array<std::int64_t, kMaxForms> hi{};
    std::array<std::int64_t, kMaxForms> partial{};
    void finish(int n, std::int64_t vmin, std::int64_t vmax);
  };

  void descend(int level);
  void prepare_level(int level);
  void generate(int level, int j, bool tight);
  void solve_last_entry(bool tight);
  bool accept_value(int level, int j, std::int64_t v, bool tight, bool& next_tight) const;
  Forms* forms_for(int level);
  void row_done(int level);
  void leaf();
  bool minors_coprime(int rows) const;
  void compute_last_column_cofactors();
  void build_penultimate_forms();
  void build_last_forms();
  bool charge_node();

  SearchParams p_;
  bool keep_classes_;
  NodeBudget* budget_;
  std::vector<std::int64_t> values_;  // allowed entries in structural order
  std::int64_t vmin_ = 0;
  std::int64_t vmax_ = 0;

  Flat m_{};
  // same_block_[level][j]: column j equals column j-1 on rows 0..level-1.
  std::array<std::array<bool, kMaxDim>, kMaxDim> same_block_{};
  std::array<std::int64_t, kMaxDim> c_{};  // cofactors of the last row
  Forms penultimate_;
  Forms last_;

  int stop_depth_ = -1;
  std::vector<Prefix>* collected_ = nullptr;
  UnitOutcome* out_ = nullptr;
  std::uint64_t unflushed_ = 0;
  bool abort_ = false;
};

}  // namespace unizero::detail
