// Compares the serial brute-force reference with the OpenMP engine at one
// and at N threads. Usage: bench_enumeration [threads] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>

#include "unizero/enumeration.hpp"
#include "unizero/reference.hpp"

using namespace unizero;

namespace {

double best_of(int repeats, const std::function<std::uint64_t()>& body, std::uint64_t& result) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    result = body();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const std::string& name, double secs, std::uint64_t classes, double baseline) {
  std::cout << std::left << std::setw(34) << name << std::right << std::setw(12) << std::fixed
            << std::setprecision(4) << secs << std::setw(10) << classes << std::setw(10) << std::setprecision(1)
            << baseline / secs << "x\n";
}

// Every class with max |entry| exactly alpha, any beta.
std::uint64_t engine_all_beta(int n, int alpha, int threads) {
  ClassQuery q = ClassQuery::range(n, alpha, 2, static_cast<int>(cofactor_bound(n, alpha)));
  q.thread_budget = threads;
  q.count_only = true;
  q.long_run = true;
  return enumerate_classes(q).total_count;
}

std::uint64_t naive_exact_alpha(int n, int alpha) {
  std::uint64_t c = 0;
  for (const auto& k : reference::naive_classes(n, alpha)) c += k.stats.alpha == alpha;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::atoi(argv[1]) : std::max(1, omp_get_max_threads());
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  std::cout << "threads=" << threads << " repeats=" << repeats << " (best time reported)\n\n";
  std::cout << std::left << std::setw(34) << "case" << std::right << std::setw(12) << "seconds" << std::setw(10)
            << "classes" << std::setw(11) << "speedup\n";

  for (const auto& [n, alpha] : {std::pair{3, 3}, std::pair{3, 4}}) {
    const std::string tag = "(" + std::to_string(n) + "," + std::to_string(alpha) + ",*)";
    std::uint64_t a = 0, b = 0, c = 0;
    const double naive = best_of(1, [&] { return naive_exact_alpha(n, alpha); }, a);
    const double one = best_of(repeats, [&] { return engine_all_beta(n, alpha, 1); }, b);
    const double many = best_of(repeats, [&] { return engine_all_beta(n, alpha, threads); }, c);
    row(tag + " naive reference", naive, a, naive);
    row(tag + " engine, 1 thread", one, b, naive);
    row(tag + " engine, " + std::to_string(threads) + " threads", many, c, naive);
    if (a != b || b != c) std::cout << "  MISMATCH\n";
  }

  for (const auto& [n, alpha] : {std::pair{4, 2}, std::pair{4, 3}, std::pair{5, 2}}) {
    const std::string tag = "(" + std::to_string(n) + "," + std::to_string(alpha) + ",*)";
    std::uint64_t b = 0, c = 0;
    const double one = best_of(repeats, [&] { return engine_all_beta(n, alpha, 1); }, b);
    const double many = best_of(repeats, [&] { return engine_all_beta(n, alpha, threads); }, c);
    row(tag + " engine, 1 thread", one, b, one);
    row(tag + " engine, " + std::to_string(threads) + " threads", many, c, one);
    if (b != c) std::cout << "  MISMATCH\n";
  }
  return 0;
}
