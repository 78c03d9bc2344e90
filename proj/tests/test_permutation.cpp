#include "ccshuffle/permutation.hpp"
#include "ccshuffle/rng.hpp"
#include "ccshuffle/shuffle.hpp"

#include <doctest.h>

#include <map>
#include <set>
#include <stdexcept>

using namespace ccshuffle;

TEST_CASE("permutation parse, format and validation") {
  const auto p = parse_permutation("3 1 2");
  CHECK(format_permutation(p) == "3 1 2");
  CHECK(p.card_at(1) == 3);
  CHECK(p.position_of(3) == 1);
  CHECK(p.position_of(2) == 3);
  CHECK_THROWS_AS(parse_permutation("1 1 2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_permutation("0 1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_permutation("1 x"), std::invalid_argument);
  CHECK_THROWS_AS(identity(0), std::invalid_argument);
  CHECK(format_permutation(reversed_identity(4)) == "4 3 2 1");
}

TEST_CASE("compose and inverse") {
  const auto p = parse_permutation("2 3 1");
  const auto q = parse_permutation("3 1 2");
  CHECK(p.inverse() == q);
  CHECK(p.compose(q) == identity(3));
  for_each_permutation(4, [](const Permutation& s) {
    CHECK(s.compose(s.inverse()) == identity(4));
    CHECK(s.compose(identity(4)) == s);
  });
}

TEST_CASE("rank and unrank are inverse bijections") {
  std::uint64_t expected = 0;
  for_each_permutation(5, [&](const Permutation& s) {
    CHECK(rank_permutation(s) == expected);
    CHECK(unrank_permutation(5, expected) == s);
    ++expected;
  });
  CHECK(expected == 120);
  CHECK(factorial_u64(20) == 2432902008176640000ULL);
}

namespace {

int count_inversions_below(const Permutation& p, int j) {
  int c = 0;
  for (int k = 1; k < j; ++k) c += p.position_of(k) > p.position_of(j) ? 1 : 0;
  return c;
}

}  // namespace

TEST_CASE("inversion profile and l-vector") {
  for_each_permutation(6, [](const Permutation& s) {
    const auto prof = inversion_profile(s);
    for (int j = 2; j <= 5; ++j) CHECK(prof.at(j) == count_inversions_below(s, j));
    const auto l = l_vector(s);
    for (int j = 1; j <= 4; ++j) CHECK(l.at(j) == j + count_inversions_below(s, 6 - j));
    CHECK(l.at(5) == 5);
  });
  CHECK(l_vector(identity(5)) == LVector::staircase(5));
  CHECK(l_vector(reversed_identity(5)) == LVector::saturated(5));
  CHECK(format_lvector(LVector::staircase(4)) == "l: 1 2 3");
  CHECK(parse_lvector("l: 2 2") == LVector::saturated(3));
  CHECK_THROWS_AS(LVector(4, {1, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(LVector(4, {1, 2, 2}), std::invalid_argument);
}

TEST_CASE("l-vector buckets have size n") {
  for (int n = 2; n <= 6; ++n) {
    std::map<LVector, int> buckets;
    for_each_permutation(n, [&](const Permutation& s) { ++buckets[l_vector(s)]; });
    CHECK(buckets.size() == factorial_u64(n - 1));
    for (const auto& kv : buckets) CHECK(kv.second == n);
  }
}

TEST_CASE("remove and reinsert") {
  const auto row = identity(3);
  CHECK(format_permutation(remove_reinsert(row, 1, 3)) == "2 3 1");
  CHECK(format_permutation(remove_reinsert(row, 3, 1)) == "3 1 2");
  CHECK(remove_reinsert(row, 2, 2) == row);
  CHECK_THROWS(remove_reinsert(row, 1, 4));
}

TEST_CASE("apply_plan examples") {
  for (int n = 1; n <= 6; ++n) {
    const InsertionPlan plan{identity(n), std::vector<int>(n, n)};
    CHECK(apply_plan(identity(n), plan) == identity(n));
  }
  // n=3, every card reinserted at the front: 1, then 2, then 3 move to position 1.
  CHECK(format_permutation(apply_plan(identity(3), {identity(3), {1, 1, 1}})) == "3 2 1");
  CHECK(card_cyclic_plan_order(parse_permutation("2 3 1")) == parse_permutation("2 3 1"));
}

TEST_CASE("fast card-cyclic shuffle matches the naive reference") {
  for (int n = 1; n <= 40; ++n) {
    for (std::uint64_t s = 0; s < 60; ++s) {
      CounterRng rng(n, s);
      const auto w = draw_positions(n, rng);
      const auto naive = apply_plan(identity(n), {identity(n), w});
      REQUIRE(card_cyclic_from_identity(w) == naive);
      std::vector<int> cards(n);
      for (int i = 0; i < n; ++i) cards[i] = n - i;
      if (n >= 3) std::swap(cards[0], cards[2]);
      const Permutation start(cards);
      CHECK(card_cyclic_shuffle(start, w) == apply_plan(start, {card_cyclic_plan_order(start), w}));
    }
  }
  std::vector<int> all_first(500, 1), all_last(500, 500);
  CHECK(card_cyclic_from_identity(all_last) == identity(500));
  CHECK(card_cyclic_from_identity(all_first) == reversed_identity(500));
}

TEST_CASE("sample_shuffle is deterministic in (seed, stream)") {
  const auto a = sample_shuffle(identity(50), 7, 3);
  CHECK(a == sample_shuffle(identity(50), 7, 3));
  CHECK(a != sample_shuffle(identity(50), 7, 4));
  CHECK(a != sample_shuffle(identity(50), 8, 3));
}

TEST_CASE("counter rng") {
  CounterRng a(1, 2), b(1, 2);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  CounterRng r(5, 0);
  std::vector<int> counts(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) {
    const int v = r.uniform_int(1, 7);
    REQUIRE(v >= 1);
    REQUIRE(v <= 7);
    ++counts[v - 1];
  }
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - draws / 7.0) * (c - draws / 7.0) / (draws / 7.0);
  CHECK(chi2 < 22.5);  // 6 dof, p ~ 0.001
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
