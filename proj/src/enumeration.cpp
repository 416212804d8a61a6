#include "unizero/enumeration.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <climits>
#include <map>
#include <mutex>
#include <string>

#include "search_kernel.hpp"
#include "unizero/checkpoint.hpp"
#include "unizero/error.hpp"

namespace unizero {

namespace {

using Clock = std::chrono::steady_clock;

void validate(const ClassQuery& q) {
  if (q.n < 1 || q.n > 7) throw QueryError("n must lie in 1..7, got " + std::to_string(q.n));
  if (q.alpha < 1 || q.alpha > 64) throw QueryError("alpha must lie in 1..64, got " + std::to_string(q.alpha));
  if (q.beta_min > q.beta_max) throw QueryError("empty beta range");
  if (q.beta_min < 1) throw QueryError("beta must be positive");
  if (q.thread_budget < 1) throw QueryError("thread budget must be positive");
  if (q.mode == SearchMode::kUnrestricted && q.positive_only)
    throw QueryError("positive_only is meaningless for the unrestricted search");
  if (q.mode == SearchMode::kZerofree && q.n > 1 && (q.alpha < 2 || q.beta_min < 2))
    throw QueryError("alpha and beta are at least 2 for zerofree unimodular matrices with n > 1");
}

detail::SearchParams params_of(const ClassQuery& q) {
  detail::SearchParams p;
  p.n = q.n;
  p.alpha = q.alpha;
  p.beta_lo = q.beta_min;
  p.beta_hi = q.beta_max;
  p.positive_only = q.positive_only;
  p.zerofree = q.mode == SearchMode::kZerofree;
  return p;
}

int split_depth(int n) { return n >= 3 ? 2 : 1; }

constexpr std::int64_t kDensePerBetaLimit = 1 << 16;

std::vector<std::int64_t> to_vec(const detail::Flat& f, int n) {
  return {f.begin(), f.begin() + n * n};
}

UnitRecord to_record(std::size_t id, const detail::UnitOutcome& out, int n) {
  UnitRecord r;
  r.id = id;
  r.nodes = out.nodes;
  for (const auto& [beta, b] : out.buckets) r.buckets.push_back({beta, b.count, b.positive, to_vec(b.first, n)});
  for (const auto& c : out.classes) r.classes.push_back({c.beta, c.positive, to_vec(c.entries, n)});
  return r;
}

IntMatrix matrix_of(int n, const std::vector<std::int64_t>& e) { return IntMatrix(n, e); }

// The 1x1 case has no search to speak of: [1] is the only class.
EnumerationResult trivial_n1(const ClassQuery& q) {
  EnumerationResult r;
  r.query = q;
  for (int b = q.beta_min; b <= q.beta_max; ++b) r.per_beta.push_back({b, 0, 0, std::nullopt});
  if (q.alpha == 1 && q.beta_min <= 1) {
    const IntMatrix one{{1}};
    r.per_beta.front() = {1, 1, 1, one};
    r.total_count = 1;
    r.positive_count = 1;
    if (!q.count_only) r.classes.push_back({one, ClassStats{1, 1, 1, true}});
  }
  r.units_total = r.units_done = 1;
  return r;
}

}  // namespace

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::kComplete:
      return "complete";
    case SearchStatus::kIncomplete:
      return "incomplete";
    case SearchStatus::kInterrupted:
      return "interrupted";
  }
  return "?";
}

std::string to_string(SearchMode m) { return m == SearchMode::kZerofree ? "zerofree" : "unrestricted"; }

ClassQuery ClassQuery::exact(int n, int alpha, int beta) { return range(n, alpha, beta, beta); }

ClassQuery ClassQuery::range(int n, int alpha, int beta_min, int beta_max) {
  ClassQuery q;
  q.n = n;
  q.alpha = alpha;
  q.beta_min = beta_min;
  q.beta_max = beta_max;
  return q;
}

int search_tier(const ClassQuery& q) {
  if (q.n <= 3) return 1;
  if (q.n == 4 && (q.alpha == 2 || (q.alpha == 3 && q.beta_max <= 3))) return 2;
  return 3;
}

EnumerationResult enumerate_classes(const ClassQuery& query, const RunOptions& opts) {
  validate(query);
  const auto started = Clock::now();
  if (query.n == 1) return trivial_n1(query);

  ClassQuery q = query;
  if (search_tier(q) == 3 && !q.long_run && !q.node_limit) q.node_limit = kDefaultTier3NodeLimit;
  const int n = q.n;
  const detail::SearchParams params = params_of(q);

  std::uint64_t split_nodes = 0;
  std::vector<detail::Prefix> units;
  {
    detail::RowSearch splitter(params, false, nullptr);
    units = splitter.split(split_depth(n), &split_nodes);
  }

  std::vector<std::optional<UnitRecord>> records(units.size());
  if (opts.resume) {
    if (!opts.checkpoint) throw QueryError("resume requested without a checkpoint path");
    if (std::filesystem::exists(*opts.checkpoint)) {
      SearchCheckpoint cp = read_checkpoint(*opts.checkpoint);
      if (!same_search(cp.query, q)) throw QueryError("checkpoint belongs to a different query");
      if (cp.unit_count != units.size() || cp.split_nodes != split_nodes)
        throw QueryError("checkpoint work-unit layout does not match this build");
      for (auto& u : cp.completed) records[u.id] = std::move(u);
    }
  }

  auto snapshot = [&] {
    SearchCheckpoint cp;
    cp.query = q;
    cp.unit_count = units.size();
    cp.split_nodes = split_nodes;
    for (const auto& r : records)
      if (r) cp.completed.push_back(*r);
    return cp;
  };

  detail::NodeBudget budget(q.node_limit.value_or(0));
  std::atomic<std::size_t> finished_now{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  auto last_write = Clock::now();
  const long count = static_cast<long>(units.size());

#pragma omp parallel num_threads(q.thread_budget)
  {
    detail::RowSearch worker(params, !q.count_only, &budget);
#pragma omp for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
      if (stop.load() || budget.exhausted()) continue;
      {
        std::lock_guard lock(mu);
        if (records[i]) continue;
      }
      detail::UnitOutcome out;
      worker.run(units[i], out);
      if (out.aborted) {
        stop = true;
        continue;
      }
      UnitRecord rec = to_record(static_cast<std::size_t>(i), out, n);
      std::lock_guard lock(mu);
      records[i] = std::move(rec);
      const std::size_t done = ++finished_now;
      if (opts.unit_limit && done >= *opts.unit_limit) stop = true;
      if (opts.checkpoint && Clock::now() - last_write >= opts.checkpoint_interval) {
        write_checkpoint(*opts.checkpoint, snapshot());
        last_write = Clock::now();
      }
    }
  }
  if (opts.checkpoint) write_checkpoint(*opts.checkpoint, snapshot());

  EnumerationResult r;
  r.query = q;
  r.units_total = units.size();
  r.nodes_explored = split_nodes;
  std::map<std::int64_t, BetaCount> buckets;
  // Dense per-beta rows unless the range is huge (max-beta searches with a
  // large alpha); then only attained betas are listed.
  if (static_cast<std::int64_t>(q.beta_max) - q.beta_min < kDensePerBetaLimit)
    for (int b = q.beta_min; b <= q.beta_max; ++b) buckets[b] = BetaCount{b, 0, 0, std::nullopt};
  for (const auto& rec : records) {
    if (!rec) continue;
    ++r.units_done;
    r.nodes_explored += rec->nodes;
    for (const auto& b : rec->buckets) {
      BetaCount& bc = buckets[b.beta];
      bc.beta = static_cast<int>(b.beta);
      bc.total += b.count;
      bc.positive += b.positive;
      IntMatrix first = matrix_of(n, b.first);
      if (!bc.first || structural_less(first, *bc.first)) bc.first = first;
    }
    for (const auto& c : rec->classes) {
      IntMatrix rep = matrix_of(n, c.entries);
      ClassStats s{q.alpha, c.beta, static_cast<int>(det(rep)), c.positive};
      r.classes.push_back({rep, s});
    }
  }
  for (auto& [beta, bc] : buckets) {
    r.total_count += bc.total;
    r.positive_count += bc.positive;
    r.per_beta.push_back(std::move(bc));
  }
  std::sort(r.classes.begin(), r.classes.end(),
            [](const CanonicalClass& a, const CanonicalClass& b) { return structural_less(a.rep, b.rep); });
  if (r.units_done == r.units_total) {
    r.status = SearchStatus::kComplete;
  } else if (budget.exhausted()) {
    r.status = SearchStatus::kIncomplete;
  } else {
    r.status = SearchStatus::kInterrupted;
  }
  r.wall_time = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started);
  return r;
}

ScanResult sequence_scan(ClassQuery q) {
  q.count_only = true;
  const EnumerationResult r = enumerate_classes(q);
  ScanResult s;
  s.status = r.status;
  s.nodes_explored = r.nodes_explored;
  for (const auto& b : r.per_beta) s.rows.push_back({b.beta, b.total, b.positive});
  return s;
}

ScanResult diagonal_scan(int n, int k_min, int k_max, int thread_budget) {
  ScanResult s;
  for (int k = k_min; k <= k_max; ++k) {
    ClassQuery q = ClassQuery::exact(n, k, k);
    q.count_only = true;
    q.thread_budget = thread_budget;
    const EnumerationResult r = enumerate_classes(q);
    s.nodes_explored += r.nodes_explored;
    if (!r.complete()) s.status = r.status;
    s.rows.push_back({k, r.total_count, r.positive_count});
  }
  return s;
}

std::int64_t theoretical_beta_bound(int n) { return cofactor_bound(n, 2); }

std::int64_t cofactor_bound(int n, int alpha) {
  if (n < 2) throw QueryError("cofactor bound needs n >= 2");
  if (alpha < 1) throw QueryError("alpha must be positive");
  unsigned __int128 v = 1;
  for (int i = 2; i <= n - 1; ++i) v *= static_cast<unsigned>(i);
  for (int i = 0; i < n - 1; ++i) {
    v *= static_cast<unsigned>(alpha);
    if (v > static_cast<unsigned __int128>(INT64_MAX)) throw RegimeError("cofactor bound overflows 64 bits");
  }
  if (v > static_cast<unsigned __int128>(INT64_MAX)) throw RegimeError("cofactor bound overflows 64 bits");
  return static_cast<std::int64_t>(v);
}

MaxBetaResult max_beta_search(int n, int alpha, SearchMode mode, const MaxBetaOptions& opts) {
  if (n > 5 && !opts.best_effort) throw QueryError("n > 5 requires the best-effort flag");
  ClassQuery q = ClassQuery::range(n, alpha, mode == SearchMode::kZerofree ? 2 : 1,
                                   static_cast<int>(std::min<std::int64_t>(cofactor_bound(n, alpha), INT32_MAX)));
  q.mode = mode;
  q.count_only = true;
  q.thread_budget = opts.thread_budget;
  q.long_run = opts.long_run;
  q.node_limit = opts.node_limit;
  const EnumerationResult r = enumerate_classes(q);
  MaxBetaResult out;
  out.n = n;
  out.alpha = alpha;
  out.mode = mode;
  out.nodes_explored = r.nodes_explored;
  out.lower_bound_only = !r.complete() || (n > 5 && opts.best_effort);
  for (auto it = r.per_beta.rbegin(); it != r.per_beta.rend(); ++it) {
    if (it->total > 0) {
      out.beta_max = it->beta;
      out.witness = it->first;
      break;
    }
  }
  return out;
}

ConjectureReport verify_conjecture(int id, int thread_budget) {
  ConjectureReport rep;
  rep.id = id;
  std::vector<std::array<int, 3>> cases;
  switch (id) {
    case 1:
      rep.statement = "no 3x3 classes with alpha=2 and 2<=beta<=4";
      cases = {{3, 2, 2}, {3, 2, 3}, {3, 2, 4}};
      break;
    case 2:
      rep.statement = "no 4x4 classes with alpha=2 and beta=3";
      cases = {{4, 2, 3}};
      break;
    case 3:
      rep.statement = "no 5x5 classes with alpha=beta=2";
      cases = {{5, 2, 2}};
      break;
    default:
      throw QueryError("unknown conjecture id " + std::to_string(id));
  }
  rep.complete = true;
  rep.confirmed = true;
  for (const auto& [n, a, b] : cases) {
    ClassQuery q = ClassQuery::exact(n, a, b);
    q.count_only = true;
    q.long_run = true;
    q.thread_budget = thread_budget;
    const EnumerationResult r = enumerate_classes(q);
    rep.cases.push_back({n, a, b, r.total_count, r.nodes_explored, r.complete()});
    rep.complete &= r.complete();
    rep.confirmed &= r.complete() && r.total_count == 0;
  }
  return rep;
}

}  // namespace unizero
