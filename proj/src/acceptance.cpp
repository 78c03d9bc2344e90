#include "ccshuffle/acceptance.hpp"

#include "ccshuffle/asymptotics.hpp"
#include "ccshuffle/exact_dist.hpp"
#include "ccshuffle/montecarlo.hpp"
#include "ccshuffle/path_count.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace ccshuffle {

namespace {

using boost::math::constants::e;
using boost::math::constants::pi;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!passed) detail << "; ";
      detail << "FAILED " << what;
      passed = false;
    }
  }
};

std::string num(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

std::string rational(const BigRational& q) {
  return to_string(numerator(q)) + "/" + to_string(denominator(q));
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// 1
void oracle_equivalence(Outcome& out, const AcceptanceOptions& opt) {
  std::size_t checked = 0;
  for (int n = 2; n <= 7; ++n) {
    const auto brute = brute_force_dist(n, opt.threads);
    const auto table = exact_table(n);
    bool same = brute.entries.size() == table.entries.size();
    for (std::size_t i = 0; same && i < table.entries.size(); ++i) {
      same = brute.entries[i].perm == table.entries[i].perm && brute.entries[i].prob == table.entries[i].prob;
      ++checked;
    }
    out.require(same, "brute force differs from N(l)/n^n at n=" + std::to_string(n));
  }
  if (out.passed) out.detail << checked << " permutations equal exactly for n=2..7";
}

// 2
void golden_table(Outcome& out, const AcceptanceOptions&) {
  const auto table = exact_table(3);
  const std::map<std::string, BigRational> want = {
      {"1 2 3", BigRational(5, 27)}, {"1 3 2", BigRational(5, 27)}, {"3 1 2", BigRational(5, 27)},
      {"2 1 3", BigRational(4, 27)}, {"2 3 1", BigRational(4, 27)}, {"3 2 1", BigRational(4, 27)}};
  for (const auto& [text, q] : want) {
    out.require(table.at(parse_permutation(text)).rational() == q, "p(" + text + ") != " + rational(q));
  }
  out.require(table.total() == 1, "table does not sum to 1");
  const auto tv = tv_to_uniform(3);
  out.require(tv.exact == BigRational(1, 18), "TV = " + rational(tv.exact));
  const auto sep = separation_distance(3);
  out.require(sep.exact == BigRational(1, 9), "separation = " + rational(sep.exact));
  const auto p231 = table.at(parse_permutation("2 3 1")).rational();
  const auto p312 = table.at(parse_permutation("3 1 2")).rational();
  out.require(p231 == BigRational(4, 27) && p312 == BigRational(5, 27) && p231 != p312, "non-reversibility witness");
  if (out.passed) {
    out.detail << "5/27 x3, 4/27 x3, sum 1, TV " << rational(tv.exact) << ", separation " << rational(sep.exact)
               << ", p(231)=4/27 != p(312)=5/27";
  }
}

// 3
void marginal_formulas(Outcome& out, const AcceptanceOptions& opt) {
  for (int n = 2; n <= 6; ++n) {
    const auto brute = brute_force_dist(n, opt.threads);
    std::vector<BigRational> first(n + 1, 0), last(n + 1, 0);
    for (const auto& e : brute.entries) {
      first[e.perm.card_at(1)] += e.prob.rational();
      last[e.perm.card_at(n)] += e.prob.rational();
    }
    for (int j = 1; j <= n; ++j) {
      out.require(first_pos_prob(n, j, EvalPolicy::Exact).exact->rational() == first[j],
                  "first marginal n=" + std::to_string(n) + " j=" + std::to_string(j));
      out.require(last_pos_prob(n, j, EvalPolicy::Exact).exact->rational() == last[j],
                  "last marginal n=" + std::to_string(n) + " j=" + std::to_string(j));
    }
  }
  const BigRational first3[] = {BigRational(10, 27), BigRational(8, 27), BigRational(9, 27)};
  const BigRational last3[] = {BigRational(8, 27), BigRational(10, 27), BigRational(9, 27)};
  for (int j = 1; j <= 3; ++j) {
    out.require(first_pos_prob(3, j).exact->rational() == first3[j - 1], "n=3 first spot value j=" + std::to_string(j));
    out.require(last_pos_prob(3, j).exact->rational() == last3[j - 1], "n=3 last spot value j=" + std::to_string(j));
  }
  for (int n = 1; n <= 100; ++n) {
    BigRational sf = 0, sl = 0;
    for (int j = 1; j <= n; ++j) {
      sf += first_pos_prob(n, j, EvalPolicy::Exact).exact->rational();
      sl += last_pos_prob(n, j, EvalPolicy::Exact).exact->rational();
    }
    out.require(sf == 1 && sl == 1, "marginal sums != 1 at n=" + std::to_string(n));
  }
  if (out.passed) out.detail << "brute-force marginals match for n=2..6; n=3 spot values; sums exactly 1 for n=1..100";
}

// 4
void lvector_buckets(Outcome& out, const AcceptanceOptions&) {
  for (int n = 2; n <= 7; ++n) {
    std::map<std::vector<int>, int> buckets;
    for_each_permutation(n, [&](const Permutation& p) { const LVector l = l_vector(p);
      ++buckets[std::vector<int>(l.values().begin(), l.values().end())]; });
    const bool sizes = std::all_of(buckets.begin(), buckets.end(), [n](const auto& kv) { return kv.second == n; });
    out.require(buckets.size() == factorial_u64(n - 1) && sizes,
                "n=" + std::to_string(n) + ": " + std::to_string(buckets.size()) + " buckets");
  }
  if (out.passed) out.detail << "(n-1)! buckets of size n for n=2..7";
}

// 5
void path_extremes(Outcome& out, const AcceptanceOptions&) {
  for (int n = 2; n <= 8; ++n) {
    const auto scan = extremal_scan(n);
    const std::string tag = " at n=" + std::to_string(n);
    out.require(scan.min == power(BigInt(2), static_cast<unsigned>(n - 1)), "min" + tag);
    out.require(scan.min_count == 1 && std::ranges::equal(scan.argmin.values(), LVector::saturated(n).values()), "argmin" + tag);
    out.require(scan.max == catalan(n), "max" + tag);
    out.require(scan.max_count == 1 && std::ranges::equal(scan.argmax.values(), LVector::staircase(n).values()), "argmax" + tag);
  }
  for (int n = 2; n <= 12; ++n) {
    out.require(count_paths(LVector::staircase(n)) == catalan(n), "staircase count at n=" + std::to_string(n));
  }
  for (int n = 2; n <= 6; ++n) {
    const auto paths = enumerate_paths(LVector::staircase(n));
    std::set<std::string> words;
    bool all_dyck = true;
    for (const auto& p : paths) {
      auto w = dyck_bijection(p);
      all_dyck = all_dyck && is_dyck_word(w) && w.size() == static_cast<std::size_t>(2 * n);
      words.insert(std::move(w));
    }
    out.require(all_dyck && words.size() == paths.size() && BigInt(words.size()) == catalan(n),
                "Dyck bijection at n=" + std::to_string(n));
  }
  if (out.passed) {
    out.detail << "unique extremes 2^(n-1) and Catalan(n) for n=2..8; staircase = Catalan(n) for n<=12; "
                  "bijection onto Dyck words for n<=6";
  }
}

// 6
void order_reversal(Outcome& out, const AcceptanceOptions&) {
  int checked = 0;
  for_each_permutation(5, [&](const Permutation& s) {
    out.require(order_reversal_prob(s) == exact_prob(s), "sigma = " + format_permutation(s));
    ++checked;
  });
  if (out.passed) out.detail << checked << " permutations of S_5 equal";
}

// 7
void randomized_order(Outcome& out, const AcceptanceOptions&) {
  const auto table = randomized_order_dist(3);
  const std::set<BigRational> allowed = {BigRational(26, 162), BigRational(27, 162), BigRational(28, 162)};
  for (const auto& e : table.entries) {
    out.require(allowed.count(e.prob.rational()) == 1,
                format_permutation(e.perm) + " -> " + rational(e.prob.rational()));
  }
  out.require(table.total() == 1, "sum != 1");
  if (out.passed) out.detail << "all 6 values in {26,27,28}/162, sum 1";
}

// 8
void asymptotic_marginals(Outcome& out, const AcceptanceOptions&) {
  constexpr double kTol = 0.02;
  constexpr double kMesoTol = 0.03;
  const int n = 10000;
  const double en = e<double>();
  double worst = 0.0;
  auto check = [&](double got, double want, double tol, const std::string& what) {
    const double r = rel_err(got, want);
    worst = std::max(worst, r);
    out.require(r < tol, what + " rel err " + num(r));
  };
  for (double b : {0.25, 0.5, 0.75, 1.0}) {
    const int j = static_cast<int>(std::floor(b * n));
    check(n * first_pos_prob(n, j, EvalPolicy::LogSpace).value, std::exp(b - 1), kTol, "first b=" + num(b));
  }
  for (double b : {0.1, 0.5, 0.9}) {
    const int j = static_cast<int>(std::floor(b * n));
    check(n * last_pos_prob(n, j, EvalPolicy::LogSpace).value, std::exp(b) / (en - 1), kTol, "last b=" + num(b));
  }
  for (int l : {0, 1, 2}) {
    check(n * last_pos_prob(n, n - l, EvalPolicy::LogSpace).value, last_pos_lattice_limit(l), kTol,
          "last l=" + std::to_string(l));
  }
  const int big = 1000000;
  for (double d : {0.5, 1.0, 2.0}) {
    const int j = static_cast<int>(std::floor(d * std::sqrt(static_cast<double>(big))));
    check(std::sqrt(static_cast<double>(big)) * first_pos_prob(big, j, EvalPolicy::LogSpace).value,
          first_pos_meso_limit(d), kMesoTol, "meso d=" + num(d));
  }
  out.detail << (out.passed ? "" : "; ") << "worst relative error " << num(worst, 3);
}

// 9
void power_sum(Outcome& out, const AcceptanceOptions&) {
  const int n = 10000;
  const double got = std::exp(0.5 * std::log(static_cast<double>(n)) - n + log_power_sum(n));
  const double want = 1.0 / ((e<double>() - 1.0) * std::sqrt(2.0 * pi<double>()));
  const double r = rel_err(got, want);
  out.require(r < 0.01, "relative error " + num(r));
  if (out.passed) out.detail << num(got, 8) << " vs " << num(want, 8) << " (rel " << num(r, 3) << ")";
}

// 10
void limit_identities(Outcome& out, const AcceptanceOptions&) {
  double round_trip = 0.0;
  for (double b : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (int i = 0; i < 1000; ++i) {
      const double x = i / 999.0;
      round_trip = std::max(round_trip, std::abs(G(b, F(b, x)) - x));
    }
  }
  out.require(round_trip < 1e-10, "round trip " + num(round_trip));

  double mass = 0.0, mean = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double b = k / 10.0;
    const double xb = x_break(b);
    const double m = b == 0.0 ? integrate_singular([](double x) { return f_density(0.0, x); }, 0.0, 1.0)
                              : integrate([b](double x) { return f_density(b, x); }, 0.0, 1.0, {xb});
    mass = std::max(mass, std::abs(m - 1.0));
    const double ex = integrate([b](double x) { return 1.0 - F(b, x); }, 0.0, 1.0, {xb});
    mean = std::max(mean, std::abs(ex - expected_pos(b)));
  }
  out.require(mass < 1e-8, "density mass error " + num(mass));
  out.require(mean < 1e-8, "expectation error " + num(mean));

  const double avg = integrate(expected_pos, 0.0, 1.0);
  out.require(std::abs(avg - 0.5) < 1e-8, "mean of E = " + num(avg, 12));

  double map_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    for (int k = 0; k < 100; ++k) {
      const double b = i / 99.0, d = k / 99.0;
      map_err = std::max(map_err, std::abs(final_pos_map(b, d) - G(b, d)));
    }
  }
  out.require(map_err < 1e-12, "final_pos_map vs G " + num(map_err));

  const auto c = named_constants();
  auto three = [](double v) { return std::round(v * 1000.0) / 1000.0; };
  const std::pair<const char*, std::pair<double, double>> named[] = {
      {"b*", {c.b_star, 0.722}},   {"b_bar", {c.b_bar, 0.545}}, {"b_hat", {c.b_hat, 0.768}},
      {"b_tilde", {c.b_tilde, 0.380}}, {"E(0)", {c.E_zero, 0.359}}, {"E(b*)", {c.E_max, 0.564}},
      {"x_hat", {c.x_hat, 0.525}}};
  for (const auto& [name, vals] : named) {
    out.require(three(vals.first) == vals.second, std::string(name) + " = " + num(vals.first, 8));
  }
  if (out.passed) {
    out.detail << "round trip " << num(round_trip, 2) << ", mass " << num(mass, 2) << ", E " << num(mean, 2)
               << ", map " << num(map_err, 2) << ", constants to 3 places";
  }
}

// 11
void pair_inversions(Outcome& out, const AcceptanceOptions&) {
  double diag = 0.0, edge = 0.0;
  for (double b : {0.1, 0.3, 0.5, 0.768, 0.9}) {
    diag = std::max(diag, std::abs(pair_inversion_prob(b, b) - 0.5));
    edge = std::max(edge, std::abs(pair_inversion_prob(b, 1.0) - (1.0 - expected_pos(b))));
  }
  out.require(diag < 1e-8, "P(b,b) error " + num(diag));
  out.require(edge < 1e-8, "P(b,1) error " + num(edge));
  constexpr double kEps = 1e-3;
  std::map<double, double> slope;
  double worst = 0.0;
  for (double b : {0.3, 0.768, 0.9}) {
    slope[b] = (pair_inversion_prob(b, b + kEps) - 0.5) / kEps;
    const double want = (1.0 - b) * std::exp(b) - 0.5;
    worst = std::max(worst, std::abs(slope[b] - want));
    out.require(std::abs(slope[b] - want) < 5e-3, "slope at b=" + num(b) + " is " + num(slope[b]));
  }
  out.require(slope[0.3] > 0 && slope[0.9] < 0, "no sign change across 0.768");
  if (out.passed) {
    out.detail << "diag " << num(diag, 2) << ", edge " << num(edge, 2) << ", slope error " << num(worst, 2)
               << " (+ at 0.3, - at 0.9)";
  }
}

// 12
void monte_carlo_limit(Outcome& out, const AcceptanceOptions& opt) {
  const int n = 2000;
  const SampleOptions so{100000, opt.seed, opt.threads};
  const auto hist = sample_position_hist(n, n / 2, so);
  const double sup = sup_distance_to_limit(hist, 0.5);
  out.require(sup < 0.02, "sup distance " + num(sup));
  const int a = static_cast<int>(std::floor(0.3 * n));
  const int b = static_cast<int>(std::floor(0.7 * n));
  const auto joint = joint_position_sample(n, {a, b}, so);
  const double indep = joint.independence_distance();
  out.require(indep < 0.03, "independence distance " + num(indep));
  if (out.passed) out.detail << "sup distance " << num(sup, 4) << ", independence " << num(indep, 4);
}

// 13
void tv_events(Outcome& out, const AcceptanceOptions& opt) {
  for (int n = 2; n <= 8; ++n) {
    for (double M : {0.5, 1.0, 1.5, 2.0}) {
      for (int L = 1; L < n; ++L) {
        const EventSpec spec{M, L};
        BigInt hits = 0;
        for_each_permutation(n, [&](const Permutation& p) {
          if (in_event(p, spec)) ++hits;
        });
        out.require(uniform_event_prob(n, spec) == ExactProb{hits, factorial(static_cast<unsigned>(n))},
                    "U(A) n=" + std::to_string(n) + " M=" + num(M) + " L=" + std::to_string(L));
      }
    }
  }
  const int n = 100000;
  const EventSpec spec{2.0, 48};
  const auto est = estimate_event_A(n, spec, SampleOptions{2000, opt.seed, opt.threads});
  out.require(est.gap() > 0.8, "gap " + num(est.gap(), 4) + " <= 0.8");
  out.detail << (out.passed ? "" : "; ") << "closed form U(A) checked for n<=8; n=1e5 M=2 L=48: p_hat "
             << num(est.p_hat, 4) << " +- " << num(est.stderr_p, 2) << ", U(A) " << num(est.uniform, 5)
             << ", gap " << num(est.gap(), 4) << ", largest possible gap 1-U(A) = " << num(1.0 - est.uniform, 5);
}

// 14
void convolution(Outcome& out, const AcceptanceOptions&) {
  const auto report = convolution_walk(WalkConfig{3, 50, 0, 0, 1});
  out.require(report.exact, "walk not exact");
  const auto& first = report.steps.front();
  const auto& last = report.steps.back();
  out.require(first.exact_tv && *first.exact_tv == BigRational(1, 18), "m=1 TV " + num(first.tv));
  out.require(last.tv < 1e-6, "m=50 TV " + num(last.tv));
  if (out.passed) out.detail << "m=1 TV 1/18, m=50 TV " << num(last.tv, 3);
}

struct Criterion {
  int id;
  const char* title;
  void (*run)(Outcome&, const AcceptanceOptions&);
};

const Criterion kCriteria[] = {
    {1, "oracle equivalence n=2..7", oracle_equivalence},
    {2, "n=3 golden table", golden_table},
    {3, "first/last marginal formulas", marginal_formulas},
    {4, "l-vector buckets", lvector_buckets},
    {5, "path count extremes and Dyck bijection", path_extremes},
    {6, "order-reversal equivalence on S_5", order_reversal},
    {7, "randomized-order variant at n=3", randomized_order},
    {8, "asymptotic marginals", asymptotic_marginals},
    {9, "power sum asymptotics", power_sum},
    {10, "limit-law identities and constants", limit_identities},
    {11, "pair inversion probabilities", pair_inversions},
    {12, "Monte Carlo vs limit law", monte_carlo_limit},
    {13, "TV event gap", tv_events},
    {14, "convolution walk", convolution},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& report) {
  std::vector<CriterionResult> results;
  for (const auto& c : kCriteria) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.id) == options.only.end()) {
      continue;
    }
    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      c.run(out, options);
    } catch (const std::exception& ex) {
      out.require(false, std::string("exception: ") + ex.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.passed = out.passed;
    r.detail = out.detail.str();
    if (report) report(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " criterion " << std::setw(2) << r.id << ": " << r.title << " | " << r.detail
     << " [" << std::fixed << std::setprecision(1) << r.seconds << "s]";
  return os.str();
}

}  // namespace ccshuffle
