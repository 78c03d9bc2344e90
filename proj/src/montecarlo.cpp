#include "ccshuffle/montecarlo.hpp"

#include "ccshuffle/asymptotics.hpp"
#include "ccshuffle/shuffle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <thread>

namespace ccshuffle {

namespace {

unsigned resolve_threads(unsigned threads, std::uint64_t reps) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (reps < threads) threads = static_cast<unsigned>(std::max<std::uint64_t>(reps, 1));
  return threads;
}

// Runs body(sample, worker) for sample = 0..reps-1 in contiguous chunks.
template <class Body>
void for_samples(std::uint64_t reps, unsigned workers, Body body) {
  auto run = [&](unsigned w) {
    const std::uint64_t lo = reps * w / workers;
    const std::uint64_t hi = reps * (w + 1) / workers;
    for (std::uint64_t i = lo; i < hi; ++i) body(i, w);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
}

Permutation shuffled(int n, std::uint64_t seed, std::uint64_t sample) {
  CounterRng rng(seed, sample);
  const auto w = draw_positions(n, rng);
  return card_cyclic_from_identity(w);
}

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("deck size must be positive");
}

// Tallies outcome(perm) over reps shuffles from id.
template <class Outcome>
Histogram tally(int n, const SampleOptions& opt, std::string label, Outcome outcome) {
  check_n(n);
  const unsigned workers = resolve_threads(opt.threads, opt.reps);
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
  for_samples(opt.reps, workers, [&](std::uint64_t i, unsigned w) {
    ++partial[w][outcome(shuffled(n, opt.seed, i)) - 1];
  });
  Histogram h;
  h.n = n;
  h.bins.assign(static_cast<std::size_t>(n), 0);
  for (const auto& p : partial) {
    for (int k = 0; k < n; ++k) h.bins[k] += p[k];
  }
  h.reps = opt.reps;
  h.seed = opt.seed;
  h.label = std::move(label);
  return h;
}

}  // namespace

double Histogram::fraction(int outcome) const {
  return reps == 0 ? 0.0 : static_cast<double>(count(outcome)) / static_cast<double>(reps);
}

double Histogram::stderr_of(int outcome) const {
  if (reps == 0) return 0.0;
  const double p = fraction(outcome);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
}

double Histogram::cdf(int k) const {
  if (reps == 0 || k <= 0) return 0.0;
  std::uint64_t s = 0;
  for (int i = 1; i <= std::min(k, n); ++i) s += count(i);
  return static_cast<double>(s) / static_cast<double>(reps);
}

Histogram sample_position_hist(int n, int card, const SampleOptions& opt) {
  check_n(n);
  if (card < 1 || card > n) throw std::out_of_range("card outside 1..n");
  return tally(n, opt, "position of card " + std::to_string(card),
               [card](const Permutation& p) { return p.position_of(card); });
}

Histogram sample_first_card_hist(int n, const SampleOptions& opt) {
  return tally(n, opt, "card in position 1", [](const Permutation& p) { return p.card_at(1); });
}

Histogram sample_last_card_hist(int n, const SampleOptions& opt) {
  return tally(n, opt, "card in position n", [](const Permutation& p) { return p.card_at(p.size()); });
}

double sup_distance_to_limit(const Histogram& positions, double b) {
  const int n = positions.n;
  double sup = 0.0;
  std::uint64_t cum = 0;
  // On [k/n, (k+1)/n) the empirical CDF is flat at cdf(k) while F_b rises.
  for (int k = 0; k <= n; ++k) {
    if (k >= 1) cum += positions.count(k);
    const double emp = static_cast<double>(cum) / static_cast<double>(positions.reps);
    const double lo = F(b, static_cast<double>(k) / n);
    sup = std::max(sup, std::abs(emp - lo));
    if (k < n) sup = std::max(sup, std::abs(emp - F(b, static_cast<double>(k + 1) / n)));
  }
  return sup;
}

int default_window(int n) { return std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))))); }

double windowed_scaled_fraction(const Histogram& h, int center, int width) {
  if (width < 1) throw std::invalid_argument("window width must be positive");
  const int lo = std::max(1, center - (width - 1) / 2);
  const int hi = std::min(h.n, lo + width - 1);
  double s = 0.0;
  for (int k = lo; k <= hi; ++k) s += h.fraction(k);
  return static_cast<double>(h.n) * s / (hi - lo + 1);
}

Histogram JointSample::marginal(std::size_t card_index) const {
  Histogram h;
  h.n = n;
  h.bins.assign(static_cast<std::size_t>(n), 0);
  h.reps = reps;
  h.seed = seed;
  h.label = "position of card " + std::to_string(cards.at(card_index));
  for (std::uint64_t i = 0; i < reps; ++i) ++h.bins[position(i, card_index) - 1];
  return h;
}

double JointSample::in_order_fraction(std::size_t a, std::size_t b) const {
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < reps; ++i) hits += position(i, a) < position(i, b) ? 1 : 0;
  return reps == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(reps);
}

double JointSample::independence_distance() const {
  // Positions are coarsened to at most kGrid cells per axis.
  constexpr int kGrid = 2000;
  const int g = std::min(n, kGrid);
  auto cell = [&](int pos) { return static_cast<int>((static_cast<std::int64_t>(pos) * g + n - 1) / n) - 1; };
  const double total = static_cast<double>(reps);
  double worst = 0.0;
  for (std::size_t a = 0; a < cards.size(); ++a) {
    for (std::size_t b = a + 1; b < cards.size(); ++b) {
      std::vector<std::uint32_t> joint(static_cast<std::size_t>(g) * g, 0);
      std::vector<std::uint64_t> ma(static_cast<std::size_t>(g), 0), mb(static_cast<std::size_t>(g), 0);
      for (std::uint64_t i = 0; i < reps; ++i) {
        const int ca = cell(position(i, a));
        const int cb = cell(position(i, b));
        ++joint[static_cast<std::size_t>(ca) * g + cb];
        ++ma[ca];
        ++mb[cb];
      }
      for (int k = 1; k < g; ++k) {
        ma[k] += ma[k - 1];
        mb[k] += mb[k - 1];
      }
      // Row-by-row 2D prefix sums.
      std::vector<std::uint64_t> col(static_cast<std::size_t>(g), 0);
      for (int r = 0; r < g; ++r) {
        std::uint64_t row = 0;
        for (int c = 0; c < g; ++c) {
          row += joint[static_cast<std::size_t>(r) * g + c];
          col[c] += row;
          const double h = static_cast<double>(col[c]) / total;
          const double prod = (static_cast<double>(ma[r]) / total) * (static_cast<double>(mb[c]) / total);
          worst = std::max(worst, std::abs(h - prod));
        }
      }
    }
  }
  return worst;
}

JointSample joint_position_sample(int n, const std::vector<int>& cards, const SampleOptions& opt) {
  check_n(n);
  if (cards.empty()) throw std::invalid_argument("joint_position_sample: no cards");
  std::set<int> distinct;
  for (int c : cards) {
    if (c < 1 || c > n) throw std::out_of_range("card " + std::to_string(c) + " outside 1..n");
    if (!distinct.insert(c).second) throw std::invalid_argument("duplicate card " + std::to_string(c));
  }
  JointSample js;
  js.n = n;
  js.cards = cards;
  js.reps = opt.reps;
  js.seed = opt.seed;
  js.positions.assign(static_cast<std::size_t>(opt.reps) * cards.size(), 0);
  const unsigned workers = resolve_threads(opt.threads, opt.reps);
  for_samples(opt.reps, workers, [&](std::uint64_t i, unsigned) {
    const Permutation inv = shuffled(n, opt.seed, i).inverse();
    for (std::size_t c = 0; c < cards.size(); ++c) {
      js.positions[i * cards.size() + c] = inv.card_at(cards[c]);
    }
  });
  return js;
}

EventEstimate estimate_event_A(int n, const EventSpec& spec, const SampleOptions& opt) {
  validate_event(n, spec);
  const unsigned workers = resolve_threads(opt.threads, opt.reps);
  std::vector<std::uint64_t> hits(workers, 0);
  for_samples(opt.reps, workers, [&](std::uint64_t i, unsigned w) {
    if (in_event(shuffled(n, opt.seed, i), spec)) ++hits[w];
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  EventEstimate est;
  const double reps = static_cast<double>(opt.reps);
  est.p_hat = opt.reps == 0 ? 0.0 : static_cast<double>(total) / reps;
  est.stderr_p = opt.reps == 0 ? 0.0 : std::sqrt(est.p_hat * (1.0 - est.p_hat) / reps);
  est.uniform = uniform_event_prob(n, spec).value();
  return est;
}

// ---------------------------------------------------------------------------

namespace {

WalkReport exact_walk(const WalkConfig& config) {
  const int n = config.n;
  const DistributionTable base = exact_table(n);
  const std::size_t states = base.entries.size();

  std::vector<BigInt> step(states);
  for (std::size_t r = 0; r < states; ++r) step[r] = base.entries[r].prob.numerator;

  // compose[a * states + b] = rank(perm_a composed with perm_b)
  std::vector<std::uint32_t> compose(states * states);
  for (std::size_t a = 0; a < states; ++a) {
    for (std::size_t b = 0; b < states; ++b) {
      compose[a * states + b] = static_cast<std::uint32_t>(
          rank_permutation(base.entries[a].perm.compose(base.entries[b].perm)));
    }
  }

  const BigInt nfact = factorial(static_cast<unsigned>(n));
  const BigInt per_step = power(BigInt(n), static_cast<unsigned>(n));
  WalkReport report;
  report.exact = true;
  report.n = n;

  std::vector<BigInt> counts = step;
  BigInt denom = per_step;
  for (int m = 1; m <= config.steps; ++m) {
    if (m > 1) {
      std::vector<BigInt> next(states, 0);
      for (std::size_t a = 0; a < states; ++a) {
        if (counts[a] == 0) continue;
        for (std::size_t b = 0; b < states; ++b) {
          next[compose[a * states + b]] += counts[a] * step[b];
        }
      }
      counts = std::move(next);
      denom *= per_step;
    }
    BigInt l1 = 0;
    for (const auto& c : counts) {
      BigInt d = c * nfact - denom;
      l1 += d < 0 ? BigInt(-d) : d;
    }
    WalkStep s;
    s.m = m;
    s.exact_tv = BigRational(l1, 2 * nfact * denom);
    s.tv = to_double(*s.exact_tv);
    s.statistic = "exact";
    report.steps.push_back(std::move(s));
  }
  return report;
}

struct Statistic {
  std::string name;
  double uniform = 0.0;
  std::function<bool(const Permutation&)> holds;
};

std::vector<Statistic> walk_statistics(int n) {
  std::vector<Statistic> stats;
  const std::pair<double, int> events[] = {{1, 1}, {1, 4}, {2, 4}, {2, 16}, {4, 16}, {4, 64}};
  for (auto [M, L] : events) {
    if (L >= n) continue;
    const EventSpec spec{M, L};
    stats.push_back({"A(M=" + std::to_string(static_cast<int>(M)) + ",L=" + std::to_string(L) + ")",
                     uniform_event_prob(n, spec).value(),
                     [spec](const Permutation& p) { return in_event(p, spec); }});
  }
  std::set<std::pair<int, int>> pairs;
  auto card = [n](double b) { return std::clamp(static_cast<int>(b * n), 1, n); };
  for (auto [i, j] : {std::pair{1, 2}, std::pair{card(0.5), card(0.5) + 1},
                      std::pair{card(0.3), card(0.7)}, std::pair{card(0.9), n}}) {
    if (i < j && j <= n) pairs.insert({i, j});
  }
  for (auto [i, j] : pairs) {
    stats.push_back({"card " + std::to_string(i) + " left of card " + std::to_string(j), 0.5,
                     [i, j](const Permutation& p) {
                       for (int c : p.cards()) {
                         if (c == i) return true;
                         if (c == j) return false;
                       }
                       return false;
                     }});
  }
  return stats;
}

WalkReport sampled_walk(const WalkConfig& config) {
  const int n = config.n;
  const auto stats = walk_statistics(n);
  const std::size_t ns = stats.size();
  const auto steps = static_cast<std::size_t>(config.steps);
  const unsigned workers = resolve_threads(config.threads, config.reps);
  std::vector<std::vector<std::uint64_t>> hits(workers, std::vector<std::uint64_t>(steps * ns, 0));

  for_samples(config.reps, workers, [&](std::uint64_t i, unsigned w) {
    CounterRng rng(config.seed, i);
    Permutation state = identity(n);
    for (std::size_t m = 0; m < steps; ++m) {
      const auto pos = draw_positions(n, rng);
      state = state.compose(card_cyclic_from_identity(pos));
      for (std::size_t s = 0; s < ns; ++s) {
        if (stats[s].holds(state)) ++hits[w][m * ns + s];
      }
    }
  });

  WalkReport report;
  report.n = n;
  const double reps = static_cast<double>(config.reps);
  for (std::size_t m = 0; m < steps; ++m) {
    WalkStep step;
    step.m = static_cast<int>(m) + 1;
    for (std::size_t s = 0; s < ns; ++s) {
      std::uint64_t h = 0;
      for (const auto& part : hits) h += part[m * ns + s];
      const double p = reps > 0 ? static_cast<double>(h) / reps : 0.0;
      const double gap = std::abs(p - stats[s].uniform);
      if (step.statistic.empty() || gap > step.tv) {
        step.tv = gap;
        step.stderr_tv = reps > 0 ? std::sqrt(p * (1.0 - p) / reps) : 0.0;
        step.statistic = stats[s].name;
      }
    }
    report.steps.push_back(std::move(step));
  }
  return report;
}

}  // namespace

WalkReport convolution_walk(const WalkConfig& config) {
  check_n(config.n);
  if (config.steps < 1) throw std::invalid_argument("convolution_walk: steps must be at least 1");
  if (config.n <= kMaxExactWalkN) return exact_walk(config);
  return sampled_walk(config);
}

}  // namespace ccshuffle
