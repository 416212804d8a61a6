#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "unizero/canonical.hpp"
#include "unizero/int_matrix.hpp"

namespace unizero {

enum class SearchMode {
  kZerofree,      // no zero in M or M^-1
  kUnrestricted,  // any unimodular M; zeros allowed everywhere
};

enum class SearchStatus {
  kComplete,
  kIncomplete,   // node limit hit
  kInterrupted,  // stopped by a unit limit; resumable from the checkpoint
};

std::string to_string(SearchStatus s);
std::string to_string(SearchMode m);

/// Enumeration request. alpha is the exact attained max |entry| of M; beta
/// must be attained exactly and lie in [beta_min, beta_max].
struct ClassQuery {
  int n = 2;
  int alpha = 2;
  int beta_min = 2;
  int beta_max = 2;
  bool positive_only = false;
  bool count_only = false;
  int thread_budget = 1;
  std::optional<std::uint64_t> node_limit;
  bool long_run = false;
  SearchMode mode = SearchMode::kZerofree;

  static ClassQuery exact(int n, int alpha, int beta);
  static ClassQuery range(int n, int alpha, int beta_min, int beta_max);
};

/// Node cap applied to tier-3 queries that have neither a node_limit nor
/// the long-run flag.
inline constexpr std::uint64_t kDefaultTier3NodeLimit = 20'000'000;

/// 1: seconds, 2: minutes, 3: hours (requires long_run or a node limit).
int search_tier(const ClassQuery& q);

struct BetaCount {
  int beta = 0;
  std::uint64_t total = 0;
  std::uint64_t positive = 0;
  std::optional<IntMatrix> first;  // structurally smallest representative

  friend bool operator==(const BetaCount&, const BetaCount&) = default;
};

struct EnumerationResult {
  ClassQuery query;
  SearchStatus status = SearchStatus::kComplete;
  // Ascending structural order of flattenings; empty when count_only.
  std::vector<CanonicalClass> classes;
  std::uint64_t total_count = 0;
  std::uint64_t positive_count = 0;
  std::uint64_t nodes_explored = 0;
  std::chrono::milliseconds wall_time{0};
  // One row per beta in [beta_min, beta_max], zero counts included.
  std::vector<BetaCount> per_beta;
  std::size_t units_total = 0;
  std::size_t units_done = 0;

  bool complete() const { return status == SearchStatus::kComplete; }
};

struct RunOptions {
  std::optional<std::filesystem::path> checkpoint;
  bool resume = false;
  // Stop claiming work after this many units finish in this run.
  std::optional<std::size_t> unit_limit;
  std::chrono::seconds checkpoint_interval{10};
};

/// Complete, duplicate-free list of canonical representatives matching q.
/// Throws QueryError on an invalid or infeasible query. A node-limit hit is
/// reported through status, never by silently truncating.
EnumerationResult enumerate_classes(const ClassQuery& q, const RunOptions& opts = {});

struct SequenceRow {
  int beta = 0;
  std::uint64_t total = 0;
  std::uint64_t positive = 0;

  friend bool operator==(const SequenceRow&, const SequenceRow&) = default;
};

struct ScanResult {
  std::vector<SequenceRow> rows;
  SearchStatus status = SearchStatus::kComplete;
  std::uint64_t nodes_explored = 0;
};

/// Counts for every beta in q's range from a single enumeration.
ScanResult sequence_scan(ClassQuery q);

/// Counts for alpha = beta = k, k in [k_min, k_max]; row.beta holds k.
ScanResult diagonal_scan(int n, int k_min, int k_max, int thread_budget = 1);

/// (n-1)! * 2^(n-1), the cofactor bound for alpha = 2. Throws RegimeError
/// when the value does not fit in 64 bits (n >= 18).
std::int64_t theoretical_beta_bound(int n);

/// (n-1)! * alpha^(n-1): bound on any (n-1)-minor with entries in
/// [-alpha, alpha].
std::int64_t cofactor_bound(int n, int alpha);

struct MaxBetaOptions {
  bool best_effort = false;  // required for n > 5
  bool long_run = false;
  int thread_budget = 1;
  std::optional<std::uint64_t> node_limit;
};

struct MaxBetaResult {
  int n = 0;
  int alpha = 0;
  SearchMode mode = SearchMode::kZerofree;
  std::int64_t beta_max = 0;  // 0 when nothing was found
  std::optional<IntMatrix> witness;
  bool lower_bound_only = false;
  std::uint64_t nodes_explored = 0;
};

MaxBetaResult max_beta_search(int n, int alpha, SearchMode mode, const MaxBetaOptions& opts = {});

struct ConjectureCase {
  int n = 0;
  int alpha = 0;
  int beta = 0;
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
  bool complete = false;
};

struct ConjectureReport {
  int id = 0;
  std::string statement;
  std::vector<ConjectureCase> cases;
  bool complete = false;
  bool confirmed = false;  // complete and every case empty
};

/// Exhaustive check of the emptiness claims 1..3. Never reports confirmed
/// unless every enumeration completed.
ConjectureReport verify_conjecture(int id, int thread_budget = 1);

}  // namespace unizero
