#include "ccshuffle/asymptotics.hpp"
#include "ccshuffle/exact_dist.hpp"
#include "ccshuffle/montecarlo.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace ccshuffle;

namespace {

void check_within(double got, double want, double se, double k) {
  INFO("got " << got << " want " << want << " se " << se);
  CHECK(std::abs(got - want) <= k * se + 1e-12);
}

double se(double p, std::uint64_t reps) { return std::sqrt(p * (1 - p) / static_cast<double>(reps)); }

}  // namespace

TEST_CASE("histograms are independent of the thread count") {
  const auto a = sample_position_hist(40, 17, {5000, 11, 1});
  const auto b = sample_position_hist(40, 17, {5000, 11, 3});
  CHECK(a.bins == b.bins);
  std::uint64_t total = 0;
  for (auto c : a.bins) total += c;
  CHECK(total == 5000);
  const auto c = sample_position_hist(40, 17, {5000, 12, 1});
  CHECK(a.bins != c.bins);
  const auto j1 = joint_position_sample(30, {3, 9, 20}, {2000, 5, 1});
  const auto j2 = joint_position_sample(30, {3, 9, 20}, {2000, 5, 4});
  CHECK(j1.positions == j2.positions);
}

TEST_CASE("n=1") {
  const auto h = sample_position_hist(1, 1, {100, 0, 1});
  CHECK(h.count(1) == 100);
}

TEST_CASE("small-n estimators agree with exact values") {
  const std::uint64_t reps = 200000;
  for (int n : {3, 5}) {
    const auto table = exact_table(n);
    const auto first = sample_first_card_hist(n, {reps, 1, 0});
    const auto last = sample_last_card_hist(n, {reps, 2, 0});
    for (int j = 1; j <= n; ++j) {
      const double pf = first_pos_prob(n, j).value;
      const double pl = last_pos_prob(n, j).value;
      check_within(first.fraction(j), pf, se(pf, reps), 4);
      check_within(last.fraction(j), pl, se(pl, reps), 4);
    }
    const int card = 2;
    const auto pos = sample_position_hist(n, card, {reps, 3, 0});
    for (int k = 1; k <= n; ++k) {
      double p = 0;
      for (const auto& e : table.entries) p += e.perm.card_at(k) == card ? e.prob.value() : 0.0;
      check_within(pos.fraction(k), p, se(p, reps), 4);
    }
    const EventSpec spec{1.0, 1};
    const double pe = event_prob(spec, table).value();
    const auto est = estimate_event_A(n, spec, {reps, 4, 0});
    check_within(est.p_hat, pe, se(pe, reps), 4);
    CHECK(est.uniform == doctest::Approx(uniform_event_prob(n, spec).value()));
  }
}

TEST_CASE("card n ends uniformly") {
  for (int n : {7, 64, 500}) {
    const std::uint64_t reps = 20000;
    const auto h = sample_position_hist(n, n, {reps, 9, 0});
    double worst = 0;
    for (int k = 1; k <= n; ++k) worst = std::max(worst, std::abs(h.fraction(k) - 1.0 / n) / se(1.0 / n, reps));
    // Max of n roughly normal z-scores.
    CHECK(worst < 3.0 + std::sqrt(2 * std::log(static_cast<double>(n))));
  }
}

TEST_CASE("position law approaches F_b") {
  const auto h = sample_position_hist(1000, 500, {20000, 21, 0});
  CHECK(sup_distance_to_limit(h, 0.5) < 0.03);
  CHECK(h.cdf(1000) == doctest::Approx(1.0));
  CHECK(h.cdf(0) == 0.0);
}

TEST_CASE("windowed fraction") {
  Histogram h;
  h.n = 4;
  h.bins = {1, 3, 4, 2};
  h.reps = 10;
  CHECK(windowed_scaled_fraction(h, 2, 3) == doctest::Approx(4 * (0.1 + 0.3 + 0.4) / 3));
  CHECK(windowed_scaled_fraction(h, 1, 1) == doctest::Approx(0.4));
  CHECK(default_window(10000) == 100);
  CHECK_THROWS_AS(windowed_scaled_fraction(h, 1, 0), std::invalid_argument);
}

TEST_CASE("joint sample") {
  CHECK_THROWS_AS(joint_position_sample(10, {2, 2}, {10, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(joint_position_sample(10, {11}, {10, 0, 1}), std::out_of_range);
  const int n = 800;
  const std::uint64_t reps = 20000;
  const auto js = joint_position_sample(n, {240, 560}, {reps, 3, 0});
  const auto single = sample_position_hist(n, 240, {reps, 3, 0});
  CHECK(js.marginal(0).bins == single.bins);
  CHECK(js.independence_distance() < 0.03);
  const double limit = pair_inversion_prob(0.3, 0.7);
  CHECK(std::abs(js.in_order_fraction(0, 1) - limit) < 0.02);
}

TEST_CASE("exact convolution walk") {
  const auto r = convolution_walk({3, 8, 0, 0, 1});
  REQUIRE(r.exact);
  REQUIRE(r.steps.size() == 8);
  CHECK(*r.steps[0].exact_tv == BigRational(1, 18));
  for (int n = 2; n <= 4; ++n) {
    const auto one = convolution_walk({n, 1, 0, 0, 1});
    CHECK(*one.steps[0].exact_tv == tv_to_uniform(n).exact);
  }
  for (std::size_t m = 1; m < r.steps.size(); ++m) CHECK(r.steps[m].tv <= r.steps[m - 1].tv);
  const auto r5 = convolution_walk({5, 3, 0, 0, 1});
  CHECK(*r5.steps[0].exact_tv == tv_to_uniform(5).exact);
  CHECK(r5.steps[2].tv < r5.steps[0].tv);
  CHECK_THROWS_AS(convolution_walk({3, 0, 0, 0, 1}), std::invalid_argument);
}

TEST_CASE("sampled convolution walk") {
  const auto a = convolution_walk({100, 4, 2000, 5, 1});
  const auto b = convolution_walk({100, 4, 2000, 5, 2});
  CHECK_FALSE(a.exact);
  REQUIRE(a.steps.size() == 4);
  for (std::size_t m = 0; m < 4; ++m) {
    CHECK(a.steps[m].tv == b.steps[m].tv);
    CHECK_FALSE(a.steps[m].statistic.empty());
  }
  CHECK(a.steps[0].tv > a.steps[3].tv);
}
