#pragma once

#include <cstdint>
#include <vector>

#include "unizero/canonical.hpp"
#include "unizero/enumeration.hpp"

namespace unizero::reference {

/// Serial brute force: every n x n tuple with entries in +-{1..alpha},
/// filtered by classify and deduplicated through canonical_form_oracle.
/// Returns every class with max |entry| <= alpha in structural order.
/// Limited to n <= 3; used as the completeness oracle for the engine.
std::vector<CanonicalClass> naive_classes(int n, int alpha);

/// Brute-force maximum of max|M^-1| over unimodular M with max|M| == alpha,
/// zeros allowed or not according to mode. n <= 3.
std::int64_t naive_max_beta(int n, int alpha, SearchMode mode);

}  // namespace unizero::reference

#include <random>

namespace unizero::reference {

/// Uniform entries in +-{1..bound}.
IntMatrix random_zerofree(int n, int bound, std::mt19937_64& rng);

struct OracleAgreement {
  int n = 0;
  int samples = 0;
  int mismatches = 0;
};

/// canonical_form against canonical_form_oracle on random zerofree matrices.
OracleAgreement oracle_agreement(int n, int samples, int bound, std::uint64_t seed);

}  // namespace unizero::reference
