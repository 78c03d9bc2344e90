#pragma once

#include "ccshuffle/numeric.hpp"
#include "ccshuffle/permutation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ccshuffle {

/// p_n(id, sigma) = N_n(l(sigma)) / n^n.
ExactProb exact_prob(const Permutation& sigma);

struct DistributionEntry {
  Permutation perm;
  ExactProb prob;
};

/// A full law on S_n. Entries are in lexicographic order, so entry i is the
/// permutation of rank i.
struct DistributionTable {
  int n = 0;
  std::vector<DistributionEntry> entries;

  const ExactProb& at(const Permutation& p) const;
  BigRational total() const;
};

inline constexpr int kMaxExactTableN = 10;
inline constexpr int kMaxBruteForceN = 8;
inline constexpr int kMaxOrderReversalN = 7;
inline constexpr int kMaxRandomizedOrderN = 5;

/// {sigma -> exact_prob(sigma)} over S_n; n <= 10.
DistributionTable exact_table(int n);

/// Tallies all n^n reinsertion vectors of the card-cyclic shuffle from id;
/// n <= 8. The plan space is split across `threads` workers by the first
/// reinsertion position (0 = hardware concurrency); the merge is a sum, so
/// the result does not depend on the thread count.
DistributionTable brute_force_dist(int n, unsigned threads = 0);

/// Probability of ending at id when starting from sigma and removing cards
/// in the order n, n-1, ..., 1. Brute force over n^n plans; n <= 7.
ExactProb order_reversal_prob(const Permutation& sigma);

/// Removal order drawn uniformly from S_n, positions uniform; denominator
/// n! n^n; n <= 5.
DistributionTable randomized_order_dist(int n);

// ---------------------------------------------------------------------------
// First/last position marginals.

enum class EvalMode { Exact, LogSpace };
enum class EvalPolicy { Auto, Exact, LogSpace };

/// Auto evaluates exactly up to this n and in log space beyond.
inline constexpr int kExactMarginalMaxN = 300;

struct MarginalProb {
  EvalMode mode = EvalMode::Exact;
  std::optional<ExactProb> exact;  // present in Exact mode
  double value = 0.0;
};

const char* to_string(EvalMode mode);

/// p_n(id, {sigma_1 = j}).
MarginalProb first_pos_prob(int n, int j, EvalPolicy policy = EvalPolicy::Auto);

/// p_n(id, {sigma_n = j}).
MarginalProb last_pos_prob(int n, int j, EvalPolicy policy = EvalPolicy::Auto);

/// log of sum_{m=1}^{n-1} m^m / m!; n >= 2.
double log_power_sum(int n);

// ---------------------------------------------------------------------------
// Distances to uniform.

struct Distance {
  BigRational exact;
  double value = 0.0;
};

Distance tv_to_uniform(const DistributionTable& table);
/// n <= 8.
Distance tv_to_uniform(int n);

struct Separation {
  BigRational exact;
  double value = 0.0;
  bool exhaustive = false;  // false: closed form 1 - n! 2^{n-1} / n^n
};

/// max_sigma (1 - p(sigma) n!). Exhaustive over S_n for n <= 8, closed form
/// from the minimum probability 2^{n-1}/n^n beyond.
Separation separation_distance(int n);

/// Exact extreme likelihood ratios p/U and their large-n approximations
/// (pi n/2)^{1/2} (2/e)^n and (sqrt(2)/n) (4/e)^n.
struct RatioBounds {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double min_asymptotic = 0.0;
  double max_asymptotic = 0.0;
};

RatioBounds likelihood_ratio_bounds(int n);

// ---------------------------------------------------------------------------
// Events A(M, L) = {some card numbered <= M sqrt(n) is in the first L positions}.

struct EventSpec {
  double M = 1.0;
  int L = 1;
};

/// floor(M sqrt(n)) capped at n.
int event_card_bound(int n, double M);

/// Throws std::invalid_argument unless M > 0 and 1 <= L < n.
void validate_event(int n, const EventSpec& spec);

bool in_event(const Permutation& sigma, const EventSpec& spec);

ExactProb event_prob(const EventSpec& spec, const DistributionTable& table);

/// U_n(A) = 1 - C(n-K, L) / C(n, L), K = event_card_bound(n, M).
ExactProb uniform_event_prob(int n, const EventSpec& spec);

}  // namespace ccshuffle
