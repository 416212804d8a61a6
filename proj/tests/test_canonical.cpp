#include <doctest.h>

#include <random>

#include "known_classes.hpp"
#include "test_util.hpp"
#include "unizero/canonical.hpp"
#include "unizero/error.hpp"
#include "unizero/exact_linalg.hpp"
#include "unizero/reference.hpp"

using namespace unizero;
using namespace unizero::testing;

namespace {

// Brute force over the whole group, (2^n n!)^2 elements. Only for n <= 3.
IntMatrix brute_canonical(const IntMatrix& m) {
  const int n = m.dim();
  std::vector<int> rp(n), cp(n);
  IntMatrix best = m;
  for (int i = 0; i < n; ++i) rp[i] = i;
  do {
    for (int i = 0; i < n; ++i) cp[i] = i;
    do {
      for (int rs = 0; rs < (1 << n); ++rs) {
        for (int cs = 0; cs < (1 << n); ++cs) {
          IntMatrix x(n);
          for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
              const int sign = ((rs >> r) & 1 ? -1 : 1) * ((cs >> c) & 1 ? -1 : 1);
              x.set(r, c, sign * m(rp[r], cp[c]));
            }
          if (structural_less(x, best)) best = x;
        }
      }
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return best;
}

GroupElement row_swap(int n, int a, int b) {
  GroupElement g = GroupElement::identity(n);
  std::swap(g.rows.perm[a], g.rows.perm[b]);
  return g;
}

}  // namespace

TEST_SUITE("canonical") {
  TEST_CASE("structural order") {
    CHECK(structural_cmp(1, 2) < 0);
    CHECK(structural_cmp(5, -1) < 0);
    CHECK(structural_cmp(-1, -2) < 0);
    CHECK(structural_cmp(3, 3) == 0);
    CHECK(structural_cmp(-3, 100) > 0);
    CHECK_THROWS_AS(structural_cmp(0, 1), ZeroEntryError);
    CHECK_THROWS_AS(structural_cmp(-1, 0), ZeroEntryError);
  }

  TEST_CASE("structural order is total and transitive on a window") {
    std::vector<std::int64_t> vals;
    for (int v = -6; v <= 6; ++v)
      if (v != 0) vals.push_back(v);
    for (auto a : vals)
      for (auto b : vals) {
        CHECK((structural_cmp(a, b) < 0) == (structural_cmp(b, a) > 0));
        CHECK((structural_cmp(a, b) == 0) == (a == b));
        for (auto c : vals)
          if (structural_cmp(a, b) < 0 && structural_cmp(b, c) < 0) CHECK(structural_cmp(a, c) < 0);
      }
  }

  TEST_CASE("apply examples") {
    const IntMatrix m{{1, 1}, {1, 2}};
    CHECK(apply(GroupElement::identity(2), m) == m);
    CHECK(apply(row_swap(2, 0, 1), m) == IntMatrix{{1, 2}, {1, 1}});
    GroupElement flip = GroupElement::identity(2);
    flip.rows.signs[1] = -1;
    flip.cols.signs[1] = -1;
    CHECK(apply(flip, m) == IntMatrix{{1, -1}, {-1, 2}});
    CHECK_THROWS_AS(apply(GroupElement::identity(3), m), DimensionError);
  }

  TEST_CASE("group axioms on random samples") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 2 + trial % 6;
      const IntMatrix m = reference::random_zerofree(n, 5, rng);
      const GroupElement g = GroupElement::random(n, rng), h = GroupElement::random(n, rng),
                         k = GroupElement::random(n, rng);
      CHECK(apply(compose(g, h), m) == apply(g, apply(h, m)));
      CHECK(compose(compose(g, h), k) == compose(g, compose(h, k)));
      CHECK(compose(g, inverse(g)) == GroupElement::identity(n));
      CHECK(compose(inverse(g), g) == GroupElement::identity(n));
      CHECK(compose(g, GroupElement::identity(n)) == g);
      CHECK(apply(inverse(g), apply(g, m)) == m);
    }
  }

  TEST_CASE("canonical form examples") {
    CHECK(canonical_form(IntMatrix{{2, 1}, {1, 1}}) == IntMatrix{{1, 1}, {1, 2}});
    CHECK(canonical_form(IntMatrix{{-1, -1}, {-1, -2}}) == IntMatrix{{1, 1}, {1, 2}});
    CHECK(canonical_form(IntMatrix{{1, 2}, {2, 3}}) == IntMatrix{{1, 2}, {2, 3}});
    CHECK(canonical_form_oracle(IntMatrix{{1, 1}, {1, 2}}) == IntMatrix{{1, 1}, {1, 2}});
    const IntMatrix unique33{{1, 2, 2}, {2, 1, 2}, {2, 2, 3}};
    CHECK(canonical_form_oracle(unique33) == unique33);
    CHECK(canonical_form(unique33) == unique33);
    CHECK_THROWS_AS(canonical_form(IntMatrix{{1, 0}, {1, 1}}), ZeroEntryError);
    CHECK_THROWS_AS(canonical_form_oracle(IntMatrix::identity(6)), DimensionError);
  }

  TEST_CASE("canonical form agrees with full-group brute force for n <= 3") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 150; ++trial) {
      const int n = 2 + trial % 2;
      const IntMatrix m = reference::random_zerofree(n, 3, rng);
      CHECK(canonical_form(m) == brute_canonical(m));
    }
  }

  TEST_CASE("oracle agreement on random corpora") {
    for (int n = 2; n <= 4; ++n) {
      const auto a = reference::oracle_agreement(n, 1000, 5, 1000 + n);
      CHECK(a.samples == 1000);
      CHECK(a.mismatches == 0);
    }
    const auto five = reference::oracle_agreement(5, 40, 3, 77);
    CHECK(five.mismatches == 0);
    // Small alphabets make large stabilisers, the hard case for tie handling.
    for (int n = 3; n <= 5; ++n) CHECK(reference::oracle_agreement(n, 300, 2, 500 + n).mismatches == 0);
  }

  TEST_CASE("fixed point, minimality and orbit constancy") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 2 + trial % 6;
      const IntMatrix m = reference::random_zerofree(n, trial % 3 + 2, rng);
      const IntMatrix c = canonical_form(m);
      CHECK(canonical_form(c) == c);
      CHECK(is_canonical(c));
      CHECK(structural_lex_cmp(c.flat(), m.flat()) <= 0);
      CHECK(is_canonical(m) == (c == m));
      const IntMatrix moved = apply(GroupElement::random(n, rng), m);
      CHECK(canonical_form(moved) == c);
      CHECK(orbit_equivalent(m, moved));
      CHECK(abs_value_profile(moved) == abs_value_profile(m));
    }
  }

  TEST_CASE("action preserves classification") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 3000; ++trial) {
      const int n = 2 + trial % 3;
      const IntMatrix m = reference::random_zerofree(n, 3, rng);
      const IntMatrix moved = apply(GroupElement::random(n, rng), m);
      const auto a = classify(m), b = classify(moved);
      REQUIRE(a.has_value() == b.has_value());
      if (a) {
        CHECK(a->alpha == b->alpha);
        CHECK(a->beta == b->beta);
        CHECK(a->positive == b->positive);
      }
    }
  }

  TEST_CASE("orbit equivalence examples") {
    CHECK_FALSE(orbit_equivalent(IntMatrix{{1, 2}, {2, 3}}, IntMatrix{{1, 2}, {1, 3}}));
    const IntMatrix m{{1, 1, 2}, {1, -3, -3}, {2, -3, -2}};
    CHECK(orbit_equivalent(m, m));
    // Same absolute profile yet different orbits.
    CHECK_FALSE(orbit_equivalent(IntMatrix{{1, 1}, {1, 2}}, IntMatrix{{1, 1}, {-1, 2}}));
  }

  TEST_CASE("transpose is not in the group") {
    const auto& pair = known::n7_a2_b2_positive;
    REQUIRE(pair.size() == 2);
    const IntMatrix a = from_entries(pair[0]), b = from_entries(pair[1]);
    CHECK(transpose(a) == b);
    CHECK(is_canonical(a));
    CHECK(is_canonical(b));
    CHECK_FALSE(orbit_equivalent(a, b));
  }

  TEST_CASE("positivity of classes") {
    const auto c = make_class(IntMatrix{{1, 1}, {-1, -2}});
    CHECK(c.rep == IntMatrix{{1, 1}, {1, 2}});
    CHECK(c.stats.positive);
    CHECK(c.stats.positive == c.rep.all_positive());
    const auto d = make_class(IntMatrix{{1, 1, 2}, {1, -2, -2}, {2, -2, -1}});
    CHECK_FALSE(d.stats.positive);
    CHECK_THROWS_AS(make_class(IntMatrix{{1, 1}, {1, 1}}), NotUnimodularError);
  }

  TEST_CASE("inverse class examples") {
    const auto a = make_class(IntMatrix{{1, 1, 1}, {1, 2, 3}, {1, 3, 4}});
    CHECK(a.stats.alpha == 4);
    CHECK(a.stats.beta == 3);
    const auto ai = inverse_class(a);
    CHECK(ai.rep == IntMatrix{{1, 1, 1}, {1, 2, -1}, {2, 3, -1}});
    CHECK(ai.stats.alpha == 3);
    CHECK(ai.stats.beta == 4);

    const auto self = make_class(IntMatrix{{1, 1}, {1, 2}});
    CHECK(inverse_class(self) == self);

    const auto b = make_class(IntMatrix{{2, 2, 3}, {2, 3, 4}, {3, 4, 5}});
    CHECK(b.stats.alpha == 5);
    CHECK(b.stats.beta == 2);
    CHECK(inverse_class(b).rep == IntMatrix{{1, 1, 2}, {1, -2, -2}, {2, -2, -1}});
  }

  TEST_CASE("inverse class is an involution") {
    std::mt19937_64 rng(31);
    int seen = 0;
    for (int trial = 0; trial < 40000 && seen < 150; ++trial) {
      const int n = 2 + trial % 4;
      const IntMatrix m = reference::random_zerofree(n, 3, rng);
      if (!classify(m)) continue;
      ++seen;
      const auto c = make_class(m);
      const auto ci = inverse_class(c);
      CHECK(ci.stats.alpha == c.stats.beta);
      CHECK(ci.stats.beta == c.stats.alpha);
      CHECK(inverse_class(ci) == c);
    }
    CHECK(seen > 50);
  }

  TEST_CASE("zero-aware canonical form for the unrestricted search") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 2 + trial % 4;
      IntMatrix m(n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m.set(r, c, d(rng));
      const IntMatrix c = detail::canonical_form_with_zeros(m);
      CHECK(detail::is_canonical_with_zeros(c));
      CHECK(detail::canonical_form_with_zeros(apply(GroupElement::random(n, rng), m)) == c);
      if (n <= 3) CHECK(c == brute_canonical(m));
    }
  }
}
