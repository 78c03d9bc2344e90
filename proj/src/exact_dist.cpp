#include "ccshuffle/exact_dist.hpp"

#include "ccshuffle/path_count.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace ccshuffle {

namespace {

constexpr int kMaxPlanN = 8;
using Row = std::array<int, kMaxPlanN>;

std::uint64_t rank_row(const Row& row, int n) {
  std::uint64_t rank = 0;
  unsigned used = 0;
  for (int j = 0; j < n; ++j) {
    const int c = row[j];
    const int smaller = (c - 1) - std::popcount(used & ((1u << (c - 1)) - 1u));
    rank = rank * static_cast<std::uint64_t>(n - j) + static_cast<std::uint64_t>(smaller);
    used |= 1u << (c - 1);
  }
  return rank;
}

// Depth-first walk over every reinsertion vector. At depth t the card
// order[t] is removed and reinserted at each of the n positions; `leaf`
// receives the final row.
template <class Leaf>
void walk_plans(const Row& row, const Row& order, int n, int t, Leaf& leaf) {
  if (t == n) {
    leaf(row);
    return;
  }
  const int card = order[t];
  Row base{};
  int m = 0;
  for (int j = 0; j < n; ++j) {
    if (row[j] != card) base[m++] = row[j];
  }
  Row child{};
  for (int w = 0; w < n; ++w) {
    for (int j = 0; j < w; ++j) child[j] = base[j];
    child[w] = card;
    for (int j = w; j < n - 1; ++j) child[j + 1] = base[j];
    walk_plans(child, order, n, t + 1, leaf);
  }
}

Row to_row(const Permutation& p) {
  Row r{};
  for (int j = 0; j < p.size(); ++j) r[j] = p.cards()[j];
  return r;
}

void require_at_most(int n, int limit, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be positive");
  if (n > limit) {
    throw std::length_error(std::string(what) + ": n = " + std::to_string(n) +
                            " exceeds the exhaustive limit " + std::to_string(limit));
  }
}

DistributionTable table_from_counts(int n, const std::vector<std::uint64_t>& counts,
                                    const BigInt& denominator) {
  DistributionTable table;
  table.n = n;
  table.entries.reserve(counts.size());
  for (std::size_t r = 0; r < counts.size(); ++r) {
    table.entries.push_back({unrank_permutation(n, r), ExactProb{BigInt(counts[r]), denominator}});
  }
  return table;
}

double log_sum_exp(const std::vector<double>& terms) {
  const double top = *std::max_element(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += std::exp(t - top);
  return top + std::log(s);
}

bool use_exact(int n, EvalPolicy policy) {
  switch (policy) {
    case EvalPolicy::Exact: return true;
    case EvalPolicy::LogSpace: return false;
    case EvalPolicy::Auto: break;
  }
  return n <= kExactMarginalMaxN;
}

void check_card(int n, int j) {
  if (n < 1) throw std::invalid_argument("deck size must be positive");
  if (j < 1 || j > n) {
    throw std::out_of_range("card " + std::to_string(j) + " outside 1.." + std::to_string(n));
  }
}

}  // namespace

ExactProb exact_prob(const Permutation& sigma) {
  const int n = sigma.size();
  return ExactProb{count_paths(l_vector(sigma)), power(BigInt(n), static_cast<unsigned>(n))};
}

const ExactProb& DistributionTable::at(const Permutation& p) const {
  if (p.size() != n) throw std::invalid_argument("DistributionTable::at: size mismatch");
  return entries.at(rank_permutation(p)).prob;
}

BigRational DistributionTable::total() const {
  BigRational s = 0;
  for (const auto& e : entries) s += e.prob.rational();
  return s;
}

DistributionTable exact_table(int n) {
  require_at_most(n, kMaxExactTableN, "exact_table");
  DistributionTable table;
  table.n = n;
  table.entries.reserve(factorial_u64(n));
  // Probabilities depend on sigma only through l(sigma); cache per l.
  std::map<LVector, BigInt> cache;
  const BigInt denom = power(BigInt(n), static_cast<unsigned>(n));
  for_each_permutation(n, [&](const Permutation& p) {
    const LVector l = l_vector(p);
    auto it = cache.find(l);
    if (it == cache.end()) it = cache.emplace(l, count_paths(l)).first;
    table.entries.push_back({p, ExactProb{it->second, denom}});
  });
  return table;
}

DistributionTable brute_force_dist(int n, unsigned threads) {
  require_at_most(n, kMaxBruteForceN, "brute_force_dist");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n));

  const Row start = to_row(identity(n));
  const std::size_t states = factorial_u64(n);
  std::vector<std::vector<std::uint64_t>> tallies(threads, std::vector<std::uint64_t>(states, 0));
  std::atomic<int> next_first{0};

  auto worker = [&](unsigned id) {
    auto& tally = tallies[id];
    auto leaf = [&](const Row& row) { ++tally[rank_row(row, n)]; };
    // Task w fixes the first reinsertion (card 1 to position w+1).
    for (int w = next_first++; w < n; w = next_first++) {
      Row child{};
      for (int j = 0; j < w; ++j) child[j] = start[j + 1];
      child[w] = 1;
      for (int j = w + 1; j < n; ++j) child[j] = start[j];
      walk_plans(child, start, n, 1, leaf);
    }
  };

  std::vector<std::thread> pool;
  for (unsigned id = 1; id < threads; ++id) pool.emplace_back(worker, id);
  worker(0);
  for (auto& th : pool) th.join();

  std::vector<std::uint64_t> counts(states, 0);
  for (const auto& t : tallies) {
    for (std::size_t r = 0; r < states; ++r) counts[r] += t[r];
  }
  return table_from_counts(n, counts, power(BigInt(n), static_cast<unsigned>(n)));
}

ExactProb order_reversal_prob(const Permutation& sigma) {
  const int n = sigma.size();
  require_at_most(n, kMaxOrderReversalN, "order_reversal_prob");
  const Row start = to_row(sigma);
  const Row order = to_row(reversed_identity(n));
  const Row target = to_row(identity(n));
  std::uint64_t hits = 0;
  auto leaf = [&](const Row& row) {
    if (std::equal(row.begin(), row.begin() + n, target.begin())) ++hits;
  };
  walk_plans(start, order, n, 0, leaf);
  return ExactProb{BigInt(hits), power(BigInt(n), static_cast<unsigned>(n))};
}

DistributionTable randomized_order_dist(int n) {
  require_at_most(n, kMaxRandomizedOrderN, "randomized_order_dist");
  const Row start = to_row(identity(n));
  std::vector<std::uint64_t> counts(factorial_u64(n), 0);
  auto leaf = [&](const Row& row) { ++counts[rank_row(row, n)]; };
  for_each_permutation(n, [&](const Permutation& order) {
    walk_plans(start, to_row(order), n, 0, leaf);
  });
  const BigInt denom = factorial(static_cast<unsigned>(n)) * power(BigInt(n), static_cast<unsigned>(n));
  return table_from_counts(n, counts, denom);
}

// ---------------------------------------------------------------------------

const char* to_string(EvalMode mode) { return mode == EvalMode::Exact ? "exact" : "log-space"; }

MarginalProb first_pos_prob(int n, int j, EvalPolicy policy) {
  check_card(n, j);
  MarginalProb out;
  if (use_exact(n, policy)) {
    out.mode = EvalMode::Exact;
    const BigInt denom = power(BigInt(n), static_cast<unsigned>(n));
    BigInt num;
    if (j == n) {
      num = power(BigInt(n), static_cast<unsigned>(n - 1));
    } else {
      // Card j reinserted first: (n-1)^{n-j} n^{j-1}. Reinserted at k >= 2:
      // sum over a = n-j-k+1 in 0..n-j-1 of (n-1)!/a! (n-1)^a.
      num = power(BigInt(n - 1), static_cast<unsigned>(n - j)) *
            power(BigInt(n), static_cast<unsigned>(j - 1));
      BigInt term = factorial(static_cast<unsigned>(n - 1));
      for (int a = 0; a <= n - j - 1; ++a) {
        if (a > 0) term = term * (n - 1) / a;
        num += term;
      }
    }
    out.exact = ExactProb{num, denom};
    out.value = out.exact->value();
    return out;
  }

  out.mode = EvalMode::LogSpace;
  const double dn = n;
  if (j == n) {
    out.value = 1.0 / dn;
    return out;
  }
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n - j + 1));
  terms.push_back((n - j) * std::log1p(-1.0 / dn) - std::log(dn));
  const double base = std::lgamma(dn) - dn * std::log(dn);
  const double log_nm1 = std::log(dn - 1.0);
  for (int a = 0; a <= n - j - 1; ++a) {
    terms.push_back(base - std::lgamma(a + 1.0) + a * log_nm1);
  }
  out.value = std::exp(log_sum_exp(terms));
  return out;
}

MarginalProb last_pos_prob(int n, int j, EvalPolicy policy) {
  check_card(n, j);
  MarginalProb out;
  if (use_exact(n, policy)) {
    out.mode = EvalMode::Exact;
    const BigInt denom = power(BigInt(n), static_cast<unsigned>(n));
    // Card j reinserted at position k in j..n:
    // (n-1)!/(k-1)! k^{j-1} (k-1)^{k-j}, with 0^0 = 1.
    BigInt num = 0;
    BigInt falling = 1;  // (n-1)!/(k-1)!, built from k = n downwards
    for (int k = n; k >= j; --k) {
      if (k < n) falling *= k;
      num += falling * power(BigInt(k), static_cast<unsigned>(j - 1)) *
             power(BigInt(k - 1), static_cast<unsigned>(k - j));
    }
    out.exact = ExactProb{num, denom};
    out.value = out.exact->value();
    return out;
  }

  out.mode = EvalMode::LogSpace;
  const double dn = n;
  const double base = std::lgamma(dn) - dn * std::log(dn);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n - j + 1));
  for (int m = j - 1; m <= n - 1; ++m) {
    if (m == 0) {
      terms.push_back(base);  // (1/0)^0 0^0 / 0! = 1
      continue;
    }
    const double dm = m;
    terms.push_back(base + (j - 1) * std::log1p(1.0 / dm) + dm * std::log(dm) - std::lgamma(dm + 1.0));
  }
  out.value = std::exp(log_sum_exp(terms));
  return out;
}

double log_power_sum(int n) {
  if (n < 2) throw std::invalid_argument("log_power_sum: n must be at least 2");
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n - 1));
  for (int m = 1; m <= n - 1; ++m) {
    const double dm = m;
    terms.push_back(dm * std::log(dm) - std::lgamma(dm + 1.0));
  }
  return log_sum_exp(terms);
}

// ---------------------------------------------------------------------------

Distance tv_to_uniform(const DistributionTable& table) {
  const BigRational uniform(BigInt(1), factorial(static_cast<unsigned>(table.n)));
  BigRational sum = 0;
  for (const auto& e : table.entries) {
    const BigRational diff = e.prob.rational() - uniform;
    sum += diff < 0 ? BigRational(-diff) : diff;
  }
  Distance d;
  d.exact = sum / 2;
  d.value = to_double(d.exact);
  return d;
}

Distance tv_to_uniform(int n) {
  require_at_most(n, kMaxBruteForceN, "tv_to_uniform");
  return tv_to_uniform(exact_table(n));
}

Separation separation_distance(int n) {
  if (n < 1) throw std::invalid_argument("separation_distance: n must be positive");
  const BigInt nfact = factorial(static_cast<unsigned>(n));
  Separation s;
  if (n <= kMaxBruteForceN) {
    const DistributionTable table = exact_table(n);
    BigRational min_p = table.entries.front().prob.rational();
    for (const auto& e : table.entries) min_p = std::min(min_p, e.prob.rational());
    s.exact = 1 - min_p * BigRational(nfact);
    s.exhaustive = true;
  } else {
    const BigInt nn = power(BigInt(n), static_cast<unsigned>(n));
    s.exact = 1 - BigRational(nfact * power(BigInt(2), static_cast<unsigned>(n - 1)), nn);
  }
  s.value = to_double(s.exact);
  return s;
}

RatioBounds likelihood_ratio_bounds(int n) {
  if (n < 1) throw std::invalid_argument("likelihood_ratio_bounds: n must be positive");
  const BigInt nfact = factorial(static_cast<unsigned>(n));
  const BigInt nn = power(BigInt(n), static_cast<unsigned>(n));
  RatioBounds r;
  r.min_ratio = to_double(BigRational(nfact * power(BigInt(2), static_cast<unsigned>(n - 1)), nn));
  r.max_ratio = to_double(BigRational(nfact * catalan(n), nn));
  const double dn = n;
  const double e = std::numbers::e;
  r.min_asymptotic = std::sqrt(std::numbers::pi * dn / 2.0) * std::pow(2.0 / e, dn);
  r.max_asymptotic = std::sqrt(2.0) / dn * std::pow(4.0 / e, dn);
  return r;
}

// ---------------------------------------------------------------------------

int event_card_bound(int n, double M) {
  if (!(M > 0.0) || !std::isfinite(M)) throw std::invalid_argument("event: M must be positive");
  const long double bound = static_cast<long double>(M) * std::sqrt(static_cast<long double>(n));
  auto k = static_cast<long long>(std::floor(bound * (1.0L + 1e-15L)));
  return static_cast<int>(std::min<long long>(k, n));
}

void validate_event(int n, const EventSpec& spec) {
  if (n < 2) throw std::invalid_argument("event: n must be at least 2");
  if (!(spec.M > 0.0) || !std::isfinite(spec.M)) throw std::invalid_argument("event: M must be positive");
  if (spec.L < 1 || spec.L >= n) {
    throw std::invalid_argument("event: L must satisfy 1 <= L < n (L = " + std::to_string(spec.L) + ")");
  }
}

bool in_event(const Permutation& sigma, const EventSpec& spec) {
  const int k = event_card_bound(sigma.size(), spec.M);
  for (int j = 1; j <= spec.L && j <= sigma.size(); ++j) {
    if (sigma.card_at(j) <= k) return true;
  }
  return false;
}

ExactProb event_prob(const EventSpec& spec, const DistributionTable& table) {
  validate_event(table.n, spec);
  BigRational mass = 0;
  for (const auto& e : table.entries) {
    if (in_event(e.perm, spec)) mass += e.prob.rational();
  }
  return make_prob(mass);
}

ExactProb uniform_event_prob(int n, const EventSpec& spec) {
  validate_event(n, spec);
  const int k = event_card_bound(n, spec.M);
  const BigInt all = binomial(static_cast<unsigned>(n), static_cast<unsigned>(spec.L));
  const BigInt avoid = binomial(static_cast<unsigned>(n - k), static_cast<unsigned>(spec.L));
  return ExactProb{all - avoid, all};
}

}  // namespace ccshuffle
