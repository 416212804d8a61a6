// Acceptance suite. Prints one line per criterion:
//   PASS|FAIL|SKIP  <id>  <description>  [detail] (seconds)
// Tier 3 runs only with UNIZERO_LONG_RUN=1. Exit status is 1 if any
// criterion fails.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "known_classes.hpp"
#include "test_util.hpp"
#include "unizero/closed_forms.hpp"
#include "unizero/enumeration.hpp"
#include "unizero/exact_linalg.hpp"
#include "unizero/reference.hpp"

using namespace unizero;
using namespace unizero::testing;

namespace {

// Wall-clock budgets. Counts are exact; these are the only tolerances.
constexpr double kTier1BudgetSeconds = 60.0;
constexpr double kTier2BudgetSeconds = 30.0 * 60.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Check = std::function<Outcome()>;

class Runner {
 public:
  explicit Runner(bool long_run) : long_run_(long_run) {}

  void run(int tier, const std::string& id, const std::string& what, const Check& check) {
    if (tier == 3 && !long_run_) {
      print("SKIP", id, what, "set UNIZERO_LONG_RUN=1", 0.0);
      return;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    tier_seconds_[tier] += secs;
    failures_ += !o.pass;
    print(o.pass ? "PASS" : "FAIL", id, what, o.detail, secs);
  }

  double seconds(int tier) const { return tier_seconds_[tier]; }
  int failures() const { return failures_; }

 private:
  static void print(const char* tag, const std::string& id, const std::string& what, const std::string& detail,
                    double secs) {
    std::cout << tag << "  " << std::left << std::setw(6) << id << what;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::fixed << std::setprecision(2) << " (" << secs << " s)" << std::endl;
  }

  bool long_run_;
  double tier_seconds_[4] = {0, 0, 0, 0};
  int failures_ = 0;
};

int threads() {
  if (const char* env = std::getenv("UNIZERO_THREADS")) return std::max(1, std::atoi(env));
  return std::max(1, omp_get_max_threads());
}

EnumerationResult exact(int n, int alpha, int beta, bool long_run = false, bool positive_only = false) {
  ClassQuery q = ClassQuery::exact(n, alpha, beta);
  q.thread_budget = threads();
  q.long_run = long_run;
  q.positive_only = positive_only;
  return enumerate_classes(q);
}

std::string counts(const EnumerationResult& r) {
  std::ostringstream os;
  os << "count=" << r.total_count << " positive=" << r.positive_count << " nodes=" << r.nodes_explored;
  if (!r.complete()) os << " INCOMPLETE";
  return os.str();
}

// Engine class set equals the listed representatives, as given.
bool lists_equal(const EnumerationResult& r, const std::vector<known::Entries>& list) {
  return rep_set(r.classes) == std::set<std::vector<std::int64_t>>(list.begin(), list.end());
}

// Engine class set contains the canonical forms of the listed matrices.
bool contains_all(const EnumerationResult& r, const std::vector<known::Entries>& list) {
  const auto have = rep_set(r.classes);
  for (const auto& c : canonical_set(list))
    if (!have.count(c)) return false;
  return true;
}

Outcome count_and_list(int n, int alpha, int beta, std::uint64_t count, const std::vector<known::Entries>* list,
                       bool long_run = false) {
  const auto r = exact(n, alpha, beta, long_run);
  bool ok = r.complete() && r.total_count == count;
  if (list) ok = ok && (list->size() == count ? lists_equal(r, *list) : contains_all(r, *list));
  return {ok, counts(r)};
}

Outcome scan_equals(int n, int alpha, int bmin, int bmax, const std::vector<std::uint64_t>& expected,
                    bool long_run = false) {
  ClassQuery q = ClassQuery::range(n, alpha, bmin, bmax);
  q.thread_budget = threads();
  q.long_run = long_run;
  const auto s = sequence_scan(q);
  std::ostringstream os;
  bool ok = s.status == SearchStatus::kComplete && s.rows.size() == expected.size();
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    os << (i ? "," : "") << s.rows[i].total;
    if (i < expected.size() && s.rows[i].total != expected[i]) ok = false;
  }
  return {ok, os.str()};
}

// Fixed points, exact (alpha, beta), and inverse pairing for one query.
bool well_formed(const EnumerationResult& r) {
  for (const auto& c : r.classes) {
    const auto s = classify(c.rep);
    if (!s || s->alpha != r.query.alpha || s->beta < r.query.beta_min || s->beta > r.query.beta_max) return false;
    if (canonical_form(c.rep) != c.rep) return false;
  }
  return true;
}

}  // namespace

int main() {
  const char* env = std::getenv("UNIZERO_LONG_RUN");
  const bool long_run = env && std::string(env) == "1";
  Runner r(long_run);
  std::cout << "acceptance: threads=" << threads() << " long_run=" << (long_run ? 1 : 0) << std::endl;

  // Tier 1.
  r.run(1, "T1.1", "n=2 diagonal counts k=2..30 match the sequence and 2 phi(k) - 1", [] {
    const auto s = diagonal_scan(2, 2, 30, threads());
    bool ok = s.status == SearchStatus::kComplete && s.rows.size() == known::n2_diagonal.size();
    for (std::size_t i = 0; ok && i < s.rows.size(); ++i)
      ok = s.rows[i].total == known::n2_diagonal[i] &&
           static_cast<std::int64_t>(s.rows[i].total) == prop5_count(static_cast<std::int64_t>(i + 2));
    return Outcome{ok, "29 values"};
  });
  r.run(1, "T1.2", "(2,k,k) representatives verbatim for k=3,4,5,6", [] {
    const bool ok = lists_equal(exact(2, 3, 3), known::k2_3) && lists_equal(exact(2, 4, 4), known::k2_4) &&
                    lists_equal(exact(2, 5, 5), known::k2_5) && lists_equal(exact(2, 6, 6), known::k2_6);
    return Outcome{ok, "3+3+7+3 matrices"};
  });
  r.run(1, "T1.3a", "(3,3,3) unique class", [] { return count_and_list(3, 3, 3, 1, &known::n3_a3_b3); });
  r.run(1, "T1.3b", "(3,3,4) (3,4,3) (3,2,5) (3,5,2) one class each", [] {
    const bool ok = count_and_list(3, 3, 4, 1, &known::n3_a3_b4).pass &&
                    count_and_list(3, 4, 3, 1, &known::n3_a4_b3).pass &&
                    count_and_list(3, 2, 5, 1, &known::n3_a2_b5).pass &&
                    count_and_list(3, 5, 2, 1, &known::n3_a5_b2).pass;
    return Outcome{ok, ""};
  });
  r.run(1, "T1.3c", "(3,3,5) -> 6", [] { return count_and_list(3, 3, 5, 6, &known::n3_a3_b5); });
  r.run(1, "T1.3d", "(3,4,4) -> 6", [] { return count_and_list(3, 4, 4, 6, &known::n3_a4_b4); });
  r.run(1, "T1.3e", "(3,3,6) -> 7", [] { return count_and_list(3, 3, 6, 7, &known::n3_a3_b6); });
  r.run(1, "T1.3f", "(3,4,5) -> 4", [] { return count_and_list(3, 4, 5, 4, &known::n3_a4_b5); });
  r.run(1, "T1.3g", "n=3 alpha=3 beta=3..15 scan", [] { return scan_equals(3, 3, 3, 15, known::n3_a3_scan); });
  r.run(1, "T1.4", "no 3x3 classes with alpha=2, beta=2..4", [] {
    const auto rep = verify_conjecture(1, threads());
    return Outcome{rep.confirmed, rep.complete ? "complete" : "INCOMPLETE"};
  });
  r.run(1, "T1.5", "canonical_form == oracle on 1000 random matrices for n=2,3,4", [] {
    int mismatches = 0;
    for (int n = 2; n <= 4; ++n) mismatches += reference::oracle_agreement(n, 1000, 5, 0xacce97 + n).mismatches;
    return Outcome{mismatches == 0, "mismatches=" + std::to_string(mismatches)};
  });
  r.run(1, "T1.6", "+-1 matrices n=2,3,4 have det divisible by 2^(n-1)", [] {
    bool ok = true;
    std::uint64_t checked = 0;
    for (int n = 2; n <= 4; ++n) {
      const auto rep = verify_prop0(n);
      ok = ok && rep.holds() && rep.matrices_checked == (std::uint64_t{1} << (n * n));
      checked += rep.matrices_checked;
    }
    return Outcome{ok, "checked=" + std::to_string(checked)};
  });
  r.run(1, "T1.7a", "max beta (3,2): zerofree 5, unrestricted 6", [] {
    const auto z = max_beta_search(3, 2, SearchMode::kZerofree);
    const auto u = max_beta_search(3, 2, SearchMode::kUnrestricted);
    const bool ok = z.beta_max == 5 && u.beta_max == 6 && !z.lower_bound_only && !u.lower_bound_only;
    return Outcome{ok, std::to_string(z.beta_max) + "," + std::to_string(u.beta_max)};
  });
  r.run(1, "T1.7b", "theoretical bound n=3..7 is 8,48,384,3840,46080", [] {
    const std::vector<std::int64_t> want = {8, 48, 384, 3840, 46080};
    bool ok = true;
    for (int n = 3; n <= 7; ++n) ok = ok && theoretical_beta_bound(n) == want[n - 3];
    return Outcome{ok, ""};
  });
  r.run(1, "P.1", "thread count does not change results", [] {
    ClassQuery q = ClassQuery::range(4, 3, 3, 4);
    q.thread_budget = 1;
    const auto a = enumerate_classes(q);
    q.thread_budget = 4;
    const auto b = enumerate_classes(q);
    return Outcome{a.classes == b.classes && a.per_beta == b.per_beta, counts(a)};
  });
  r.run(1, "P.2", "checkpoint split and resume reproduce a full run", [] {
    const auto path = std::filesystem::temp_directory_path() / "unizero_acceptance.ckpt";
    std::filesystem::remove(path);
    const ClassQuery q = ClassQuery::range(4, 3, 3, 4);
    const auto whole = enumerate_classes(q);
    RunOptions o;
    o.checkpoint = path;
    o.unit_limit = 10;
    auto part = enumerate_classes(q, o);
    int slices = 1;
    o.resume = true;
    while (!part.complete() && slices < 10000) {
      part = enumerate_classes(q, o);
      ++slices;
    }
    std::filesystem::remove(path);
    const bool ok = part.complete() && part.classes == whole.classes && part.per_beta == whole.per_beta;
    return Outcome{ok, "slices=" + std::to_string(slices)};
  });
  r.run(1, "P.3", "inverse classes pair (n,a,b) with (n,b,a) on tier 1 cases", [] {
    bool ok = true;
    int pairs = 0;
    for (int a = 2; a <= 6; ++a)
      for (int b = 2; b <= 6; ++b) {
        const auto fwd = exact(3, a, b), back = exact(3, b, a);
        std::vector<CanonicalClass> mapped;
        for (const auto& c : fwd.classes) mapped.push_back(inverse_class(c));
        ok = ok && rep_set(mapped) == rep_set(back.classes) && mapped.size() == back.classes.size();
        ++pairs;
      }
    for (int k = 2; k <= 30; ++k) {
      const auto d = exact(2, k, k);
      std::vector<CanonicalClass> mapped;
      for (const auto& c : d.classes) mapped.push_back(inverse_class(c));
      ok = ok && rep_set(mapped) == rep_set(d.classes);
      ++pairs;
    }
    return Outcome{ok, "pairs=" + std::to_string(pairs)};
  });
  r.run(1, "P.4", "every emitted representative is canonical with the queried (alpha, beta)", [] {
    bool ok = true;
    for (int a = 2; a <= 6; ++a)
      for (int b = 2; b <= 8; ++b) ok = ok && well_formed(exact(3, a, b));
    for (int k = 2; k <= 30; ++k) ok = ok && well_formed(exact(2, k, k));
    return Outcome{ok, ""};
  });
  r.run(1, "T1.8", "tier 1 wall time within budget", [&r] {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << r.seconds(1) << " s <= " << kTier1BudgetSeconds << " s";
    return Outcome{r.seconds(1) <= kTier1BudgetSeconds, os.str()};
  });

  // Tier 2.
  r.run(2, "T2.1a", "(4,2,2) -> 3", [] { return count_and_list(4, 2, 2, 3, &known::n4_a2_b2); });
  r.run(2, "T2.1b", "no 4x4 classes with alpha=2, beta=3", [] {
    const auto rep = verify_conjecture(2, threads());
    return Outcome{rep.confirmed, rep.complete ? "complete" : "INCOMPLETE"};
  });
  r.run(2, "T2.1c", "(4,2,4) -> 1, (4,2,5) -> 6, (4,2,6) -> 6", [] {
    const bool ok = count_and_list(4, 2, 4, 1, &known::n4_a2_b4).pass &&
                    count_and_list(4, 2, 5, 6, &known::n4_a2_b5).pass &&
                    count_and_list(4, 2, 6, 6, &known::n4_a2_b6).pass;
    return Outcome{ok, ""};
  });
  r.run(2, "T2.1d", "n=4 alpha=2 beta=4..26 scan", [] { return scan_equals(4, 2, 4, 26, known::n4_a2_scan); });
  r.run(2, "T2.2", "(4,3,3) -> 163 total, 38 positive", [] {
    const auto res = exact(4, 3, 3);
    return Outcome{res.complete() && res.total_count == 163 && res.positive_count == 38, counts(res)};
  });
  r.run(2, "T2.3", "max beta (4,2): zerofree 26, unrestricted 30", [] {
    const auto z = max_beta_search(4, 2, SearchMode::kZerofree);
    const auto u = max_beta_search(4, 2, SearchMode::kUnrestricted);
    const bool ok = z.beta_max == 26 && u.beta_max == 30 && !z.lower_bound_only && !u.lower_bound_only;
    return Outcome{ok, std::to_string(z.beta_max) + "," + std::to_string(u.beta_max)};
  });
  r.run(2, "T2.4", "tier 2 wall time within budget", [&r] {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << r.seconds(2) << " s <= " << kTier2BudgetSeconds << " s";
    return Outcome{r.seconds(2) <= kTier2BudgetSeconds, os.str()};
  });

  // Tier 3.
  r.run(3, "T3.1", "n=4 alpha=3 beta=3..9 scan", [] {
    return scan_equals(4, 3, 3, 9, known::n4_a3_scan, true);
  });
  r.run(3, "T3.2", "no 5x5 classes with alpha=beta=2", [] {
    const auto rep = verify_conjecture(3, threads());
    return Outcome{rep.confirmed, rep.complete ? "complete" : "INCOMPLETE"};
  });
  r.run(3, "T3.3", "(5,2,3) -> 2", [] { return count_and_list(5, 2, 3, 2, &known::n5_a2_b3, true); });
  r.run(3, "T3.4", "(5,2,4) -> 22 total, 1 positive, list matches", [] {
    const auto res = exact(5, 2, 4, true);
    const bool ok = res.complete() && res.total_count == 22 && res.positive_count == 1 &&
                    rep_set(res.classes) == canonical_set(known::n5_a2_b4);
    return Outcome{ok, counts(res)};
  });
  r.run(3, "T3.5", "(5,3,3) -> 1352 total, 189 positive", [] {
    ClassQuery q = ClassQuery::exact(5, 3, 3);
    q.thread_budget = threads();
    q.long_run = true;
    q.count_only = true;
    const auto res = enumerate_classes(q);
    return Outcome{res.complete() && res.total_count == 1352 && res.positive_count == 189, counts(res)};
  });
  r.run(3, "T3.6", "(6,2,2) -> 203 total, 4 positive", [] {
    const auto res = exact(6, 2, 2, true);
    std::vector<CanonicalClass> pos;
    for (const auto& c : res.classes)
      if (c.stats.positive) pos.push_back(c);
    const bool positives_match = rep_set(pos) == canonical_set(known::n6_a2_b2_positive);
    const bool ok = res.complete() && res.total_count == 203 && res.positive_count == 4 && positives_match;
    return Outcome{ok, counts(res) + (positives_match ? " positives match" : " positives differ")};
  });
  r.run(3, "T3.7", "(6,2,3) -> 154 total, 6 positive", [] {
    const auto res = exact(6, 2, 3, true);
    std::vector<CanonicalClass> pos;
    for (const auto& c : res.classes)
      if (c.stats.positive) pos.push_back(c);
    const bool positives_match = rep_set(pos) == canonical_set(known::n6_a2_b3_positive);
    const bool ok = res.complete() && res.total_count == 154 && res.positive_count == 6 && positives_match;
    return Outcome{ok, counts(res) + (positives_match ? " positives match" : " positives differ")};
  });
  r.run(3, "T3.8", "(7,2,2) positive-only -> the transpose pair", [] {
    const auto res = exact(7, 2, 2, true, true);
    const bool ok = res.complete() && res.total_count == 2 &&
                    rep_set(res.classes) == canonical_set(known::n7_a2_b2_positive) &&
                    transpose(res.classes[0].rep) == res.classes[1].rep;
    return Outcome{ok, counts(res)};
  });

  std::cout << "acceptance: " << (r.failures() == 0 ? "all criteria passed" : "FAILURES=" + std::to_string(r.failures()))
            << std::endl;
  return r.failures() == 0 ? 0 : 1;
}
