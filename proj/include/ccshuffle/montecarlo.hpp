#pragma once

#include "ccshuffle/exact_dist.hpp"
#include "ccshuffle/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ccshuffle {

/// Counts over outcomes 1..n (a position or a card number).
struct Histogram {
  int n = 0;
  std::vector<std::uint64_t> bins;  // bins[k - 1] counts outcome k
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  std::string label;

  std::uint64_t count(int outcome) const { return bins[outcome - 1]; }
  double fraction(int outcome) const;
  /// Binomial standard error of fraction(outcome).
  double stderr_of(int outcome) const;
  /// Empirical P(outcome <= k).
  double cdf(int k) const;
};

/// Sampling options shared by every estimator. Sample i always uses
/// stream i, so `threads` never changes the result.
struct SampleOptions {
  std::uint64_t reps = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Final position of card j after the shuffle from id.
Histogram sample_position_hist(int n, int card, const SampleOptions& opt);

/// Number of the card in position 1 (resp. n).
Histogram sample_first_card_hist(int n, const SampleOptions& opt);
Histogram sample_last_card_hist(int n, const SampleOptions& opt);

/// sup_k |empirical CDF(k) - F_b(k/n)| for the rescaled position histogram.
double sup_distance_to_limit(const Histogram& positions, double b);

/// n times the mean fraction over the window of outcomes centred on
/// `center` with `width` outcomes (clipped to 1..n).
double windowed_scaled_fraction(const Histogram& h, int center, int width);

/// Default smoothing width for pointwise checks: round(sqrt(n)).
int default_window(int n);

struct JointSample {
  int n = 0;
  std::vector<int> cards;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  /// positions[i * cards.size() + c] = final position of cards[c] in sample i.
  std::vector<int> positions;

  int position(std::uint64_t sample, std::size_t card_index) const {
    return positions[sample * cards.size() + card_index];
  }
  Histogram marginal(std::size_t card_index) const;
  /// Fraction of samples where cards[a] ends left of cards[b].
  double in_order_fraction(std::size_t a, std::size_t b) const;
  /// Max over card pairs of sup_{k1,k2} |H(k1,k2) - H1(k1) H2(k2)| with
  /// empirical joint and marginal CDFs.
  double independence_distance() const;
};

/// Throws std::invalid_argument on duplicate or out-of-range cards.
JointSample joint_position_sample(int n, const std::vector<int>& cards, const SampleOptions& opt);

struct EventEstimate {
  double p_hat = 0.0;
  double stderr_p = 0.0;
  double uniform = 0.0;  // U_n(A), exact closed form
  double gap() const { return p_hat - uniform; }
};

/// Fraction of sampled shuffles in A(M, L), paired with U_n(A).
EventEstimate estimate_event_A(int n, const EventSpec& spec, const SampleOptions& opt);

// ---------------------------------------------------------------------------
// Random walk driven by repeated shuffles.

struct WalkConfig {
  int n = 3;
  int steps = 1;  // m
  std::uint64_t reps = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct WalkStep {
  int m = 0;
  double tv = 0.0;  // exact TV, or the best lower bound
  double stderr_tv = 0.0;
  std::optional<BigRational> exact_tv;
  std::string statistic;  // which statistic gave the bound (Monte Carlo)
};

struct WalkReport {
  bool exact = false;
  int n = 0;
  std::vector<WalkStep> steps;
};

inline constexpr int kMaxExactWalkN = 5;

/// TV distance to uniform after m = 1..steps shuffles. Exact m-fold
/// convolution for n <= 5; otherwise a Monte Carlo lower bound
/// max_S |p_hat(S) - U(S)| over a fixed family of events and pair orders.
/// Exploratory: no limit theory backs the large-n numbers.
WalkReport convolution_walk(const WalkConfig& config);

}  // namespace ccshuffle
