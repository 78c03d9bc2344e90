#include "ccshuffle/exact_dist.hpp"
#include "ccshuffle/path_count.hpp"
#include "ccshuffle/shuffle.hpp"

#include <doctest.h>

#include <map>
#include <stdexcept>

using namespace ccshuffle;

namespace {

// Every plan through the naive reference, tallied by permutation.
std::map<Permutation, BigInt> naive_tally(int n) {
  std::map<Permutation, BigInt> tally;
  std::vector<int> w(n, 1);
  while (true) {
    ++tally[apply_plan(identity(n), {identity(n), w})];
    int i = n - 1;
    while (i >= 0 && w[i] == n) w[i--] = 1;
    if (i < 0) break;
    ++w[i];
  }
  return tally;
}

BigRational q(long a, long b) { return BigRational(a, b); }

}  // namespace

TEST_CASE("n=3 golden table") {
  const auto t = exact_table(3);
  REQUIRE(t.entries.size() == 6);
  CHECK(t.at(parse_permutation("1 2 3")).rational() == q(5, 27));
  CHECK(t.at(parse_permutation("1 3 2")).rational() == q(5, 27));
  CHECK(t.at(parse_permutation("3 1 2")).rational() == q(5, 27));
  CHECK(t.at(parse_permutation("2 1 3")).rational() == q(4, 27));
  CHECK(t.at(parse_permutation("2 3 1")).rational() == q(4, 27));
  CHECK(t.at(parse_permutation("3 2 1")).rational() == q(4, 27));
  CHECK(t.at(parse_permutation("3 2 1")).denominator == 27);
  CHECK(t.total() == 1);
  CHECK(tv_to_uniform(3).exact == q(1, 18));
  CHECK(separation_distance(3).exact == q(1, 9));
  CHECK(exact_prob(parse_permutation("1 2 3")) == ExactProb{10, 54});
}

TEST_CASE("n=1 and n=2") {
  CHECK(exact_table(1).entries.front().prob.rational() == 1);
  const auto t = exact_table(2);
  for (const auto& e : t.entries) CHECK(e.prob.rational() == q(1, 2));
  CHECK(tv_to_uniform(2).exact == 0);
}

TEST_CASE("table equals the naive plan tally") {
  for (int n = 2; n <= 5; ++n) {
    const auto tally = naive_tally(n);
    const auto t = exact_table(n);
    const BigInt denom = power(BigInt(n), n);
    for (const auto& e : t.entries) {
      const auto it = tally.find(e.perm);
      REQUIRE(it != tally.end());
      CHECK(e.prob == ExactProb{it->second, denom});
    }
    CHECK(tally.size() == t.entries.size());
  }
}

TEST_CASE("brute force equals table and ignores thread count") {
  for (int n = 2; n <= 6; ++n) {
    const auto a = brute_force_dist(n, 1);
    const auto b = brute_force_dist(n, 3);
    const auto t = exact_table(n);
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      CHECK(a.entries[i].prob == t.entries[i].prob);
      CHECK(b.entries[i].prob.numerator == a.entries[i].prob.numerator);
    }
  }
  CHECK_THROWS_AS(brute_force_dist(9), std::length_error);
  CHECK_THROWS_AS(exact_table(11), std::length_error);
}

TEST_CASE("probability does not depend on the position of card n") {
  CHECK(exact_prob(parse_permutation("1 3 2")) == exact_prob(identity(3)));
  const auto t = exact_table(7);
  for (int k = 1; k <= 7; ++k) {
    BigRational s = 0;
    for (const auto& e : t.entries) {
      if (e.perm.position_of(7) == k) s += e.prob.rational();
    }
    CHECK(s == q(1, 7));
  }
}

TEST_CASE("inversion dominance orders probabilities") {
  const int n = 7;
  std::map<std::vector<int>, BigRational> by_profile;
  for_each_permutation(n, [&](const Permutation& s) {
    by_profile.emplace(inversion_profile(s).counts, exact_prob(s).rational());
  });
  CHECK(by_profile.size() == factorial_u64(n - 1));
  int strict_pairs = 0;
  for (const auto& [a, pa] : by_profile) {
    for (const auto& [b, pb] : by_profile) {
      bool le = true, strict = false;
      for (std::size_t i = 0; i < a.size(); ++i) {
        le = le && a[i] <= b[i];
        strict = strict || a[i] < b[i];
      }
      if (le && strict) {
        ++strict_pairs;
        CHECK(pa > pb);
      }
    }
  }
  CHECK(strict_pairs > 0);
}

TEST_CASE("extreme probabilities and their permutations") {
  for (int n = 2; n <= 7; ++n) {
    const BigRational cmax(catalan(n), power(BigInt(n), n));
    const BigRational cmin(power(BigInt(2), n - 1), power(BigInt(n), n));
    for_each_permutation(n, [&](const Permutation& s) {
      bool increasing = true, decreasing = true;
      for (int c = 1; c + 1 < n; ++c) {
        increasing = increasing && s.position_of(c) < s.position_of(c + 1);
        decreasing = decreasing && s.position_of(c) > s.position_of(c + 1);
      }
      const auto p = exact_prob(s).rational();
      CHECK((p == cmax) == increasing);
      CHECK((p == cmin) == (decreasing || n == 2));
    });
  }
}

TEST_CASE("n=3 reversibility fails") {
  const auto a = parse_permutation("2 3 1");
  CHECK(a.inverse() == parse_permutation("3 1 2"));
  CHECK_FALSE(exact_prob(a) == exact_prob(a.inverse()));
}

TEST_CASE("first and last marginals") {
  const BigRational first3[] = {q(10, 27), q(8, 27), q(9, 27)};
  const BigRational last3[] = {q(8, 27), q(10, 27), q(9, 27)};
  for (int j = 1; j <= 3; ++j) {
    CHECK(first_pos_prob(3, j).exact->rational() == first3[j - 1]);
    CHECK(last_pos_prob(3, j).exact->rational() == last3[j - 1]);
  }
  for (int n = 2; n <= 8; ++n) {
    const auto t = exact_table(n);
    std::vector<BigRational> first(n + 1, 0), last(n + 1, 0);
    for (const auto& e : t.entries) {
      first[e.perm.card_at(1)] += e.prob.rational();
      last[e.perm.card_at(n)] += e.prob.rational();
    }
    for (int j = 1; j <= n; ++j) {
      CHECK(first_pos_prob(n, j).exact->rational() == first[j]);
      CHECK(last_pos_prob(n, j).exact->rational() == last[j]);
    }
  }
  CHECK(last_pos_prob(10000, 10000).value == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(last_pos_prob(250, 250).exact->rational() == q(1, 250));
  CHECK(first_pos_prob(250, 250).exact->rational() == q(1, 250));
  CHECK_THROWS_AS(first_pos_prob(5, 0), std::out_of_range);
  CHECK_THROWS_AS(last_pos_prob(5, 6), std::out_of_range);
}

TEST_CASE("exact and log-space modes agree") {
  for (int n : {2, 10, 57, 200, 300}) {
    for (int j = 1; j <= n; j += std::max(1, n / 13)) {
      const auto fe = first_pos_prob(n, j, EvalPolicy::Exact);
      const auto fl = first_pos_prob(n, j, EvalPolicy::LogSpace);
      CHECK(fl.mode == EvalMode::LogSpace);
      CHECK(fl.value == doctest::Approx(fe.value).epsilon(1e-10));
      const auto le = last_pos_prob(n, j, EvalPolicy::Exact);
      const auto ll = last_pos_prob(n, j, EvalPolicy::LogSpace);
      CHECK(ll.value == doctest::Approx(le.value).epsilon(1e-10));
    }
  }
  CHECK(first_pos_prob(300, 5).mode == EvalMode::Exact);
  CHECK(first_pos_prob(301, 5).mode == EvalMode::LogSpace);
  CHECK_FALSE(first_pos_prob(301, 5).exact.has_value());
}

TEST_CASE("power sum") {
  // sum_{m=1}^{4} m^m/m! = 1 + 2 + 4.5 + 256/24
  CHECK(std::exp(log_power_sum(5)) == doctest::Approx(1 + 2 + 4.5 + 256.0 / 24).epsilon(1e-12));
}

TEST_CASE("distances") {
  for (int n = 2; n <= 8; ++n) {
    const auto s = separation_distance(n);
    CHECK(s.exhaustive);
    const BigRational closed = 1 - BigRational(factorial(n) * power(BigInt(2), n - 1), power(BigInt(n), n));
    CHECK(s.exact == closed);
  }
  CHECK_FALSE(separation_distance(12).exhaustive);
  CHECK(tv_to_uniform(exact_table(4)).exact == tv_to_uniform(4).exact);
  CHECK_THROWS_AS(tv_to_uniform(9), std::length_error);
  const auto r = likelihood_ratio_bounds(6);
  CHECK(r.min_ratio == doctest::Approx(720.0 * 32 / 46656));
  CHECK(r.max_ratio == doctest::Approx(720.0 * 132 / 46656));
}

TEST_CASE("order reversal and randomized order") {
  for_each_permutation(4, [](const Permutation& s) { CHECK(order_reversal_prob(s) == exact_prob(s)); });
  const auto t = randomized_order_dist(3);
  for (const auto& e : t.entries) {
    const auto v = e.prob.rational();
    CHECK((v == q(26, 162) || v == q(27, 162) || v == q(28, 162)));
  }
  CHECK(t.total() == 1);
  CHECK_THROWS_AS(order_reversal_prob(identity(8)), std::length_error);
  CHECK_THROWS_AS(randomized_order_dist(6), std::length_error);
}

TEST_CASE("events") {
  CHECK(event_card_bound(3, 1.0) == 1);
  CHECK(event_card_bound(100000, 2.0) == 632);
  CHECK(event_card_bound(16, 1.0) == 4);
  CHECK(event_card_bound(4, 9.0) == 4);
  CHECK(event_prob({1.0, 1}, exact_table(3)).rational() == q(10, 27));
  CHECK(uniform_event_prob(3, {1.0, 1}).rational() == q(1, 3));
  CHECK(uniform_event_prob(100, {10.0, 99}).rational() == 1);
  CHECK_THROWS_AS(validate_event(5, {1.0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(validate_event(5, {0.0, 2}), std::invalid_argument);
  for (int n = 2; n <= 6; ++n) {
    for (int L = 1; L < n; ++L) {
      const EventSpec spec{1.5, L};
      BigInt hits = 0;
      for_each_permutation(n, [&](const Permutation& s) { hits += in_event(s, spec) ? 1 : 0; });
      CHECK(uniform_event_prob(n, spec) == ExactProb{hits, factorial(n)});
    }
  }
}
