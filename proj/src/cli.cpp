#include "ccshuffle/cli.hpp"

#include "ccshuffle/acceptance.hpp"
#include "ccshuffle/asymptotics.hpp"
#include "ccshuffle/exact_dist.hpp"
#include "ccshuffle/io.hpp"
#include "ccshuffle/montecarlo.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace ccshuffle {

namespace {

using Json = nlohmann::ordered_json;

inline constexpr std::size_t kMaxGridPoints = 1000000;

struct Common {
  std::string format = "csv";
  std::string out_path;
  unsigned threads = 0;
  std::uint64_t seed = 0;
};

struct Params {
  int n = 0;
  int j = 0;
  bool all = false;
  bool rescale = false;
  std::string which = "first";
  std::string mode = "auto";
  std::string kind;
  std::optional<double> b, x;
  std::string grid = "0:1:0.01";
  std::uint64_t reps = 10000;
  int card = 0;
  std::vector<int> cards;
  double M = 0.0;
  int L = 0;
  int steps = 0;
  std::vector<int> only;
};

Json real(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    const std::string piece = spec.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
    double v = 0.0;
    const auto res = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (piece.empty() || res.ec != std::errc() || res.ptr != piece.data() + piece.size()) {
      throw std::invalid_argument("malformed grid '" + spec + "' (expected start:stop:step)");
    }
    parts.push_back(v);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) throw std::invalid_argument("malformed grid '" + spec + "' (expected start:stop:step)");
  const double lo = parts[0], hi = parts[1], step = parts[2];
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("malformed grid '" + spec + "': need step > 0 and stop >= start");
  const double span = (hi - lo) / step;
  if (span + 1 > static_cast<double>(kMaxGridPoints)) {
    throw std::invalid_argument("grid '" + spec + "' exceeds " + std::to_string(kMaxGridPoints) + " points");
  }
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = std::min(hi, lo + static_cast<double>(i) * step);
  return grid;
}

void emit(const Table& table, const Common& common, std::ostream& out) {
  std::ostringstream buf;
  write_table(buf, table, parse_format(common.format));
  if (common.out_path.empty()) {
    out << buf.str();
    return;
  }
  std::ofstream file(common.out_path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file " + common.out_path);
  file << buf.str();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

std::string ratio(const BigRational& q) { return to_string(numerator(q)) + "/" + to_string(denominator(q)); }

// ---------------------------------------------------------------------------

void cmd_exact(const Params& p, const Common& c, std::ostream& out) {
  require(p.n >= 1, "--n must be at least 1");
  if (p.n > kMaxBruteForceN) {
    throw std::length_error("exact: n = " + std::to_string(p.n) + " exceeds the exact-table bound n <= 8 (8! = " +
                            std::to_string(factorial_u64(kMaxBruteForceN)) + " permutations)");
  }
  const auto dist = exact_table(p.n);
  Table t = distribution_rows(dist);
  t.config["command"] = "exact";
  const auto tv = tv_to_uniform(dist);
  const auto sep = separation_distance(p.n);
  t.summary["tv_to_uniform"] = ratio(tv.exact);
  t.summary["tv_to_uniform_float"] = tv.value;
  t.summary["separation"] = ratio(sep.exact);
  t.summary["separation_float"] = sep.value;
  emit(t, c, out);
}

void cmd_marginal(const Params& p, const Common& c, std::ostream& out) {
  require(p.n >= 1, "--n must be at least 1");
  require(p.all != (p.j != 0), "marginal: give exactly one of --j or --all");
  const EvalPolicy policy = p.mode == "exact" ? EvalPolicy::Exact : p.mode == "log" ? EvalPolicy::LogSpace : EvalPolicy::Auto;
  const bool first = p.which == "first";
  Table t;
  t.config["command"] = "marginal";
  t.config["n"] = p.n;
  t.config["which"] = p.which;
  t.config["mode"] = p.mode;
  t.columns = {"j", "mode", "numerator", "denominator", "float"};
  if (p.rescale) t.columns.push_back("scaled");
  const int lo = p.all ? 1 : p.j;
  const int hi = p.all ? p.n : p.j;
  for (int j = lo; j <= hi; ++j) {
    const auto m = first ? first_pos_prob(p.n, j, policy) : last_pos_prob(p.n, j, policy);
    std::vector<Json> row = {j, to_string(m.mode)};
    if (m.exact) {
      row.push_back(to_string(m.exact->numerator));
      row.push_back(to_string(m.exact->denominator));
    } else {
      row.push_back(nullptr);
      row.push_back(nullptr);
    }
    row.push_back(m.value);
    if (p.rescale) row.push_back(p.n * m.value);
    t.rows.push_back(std::move(row));
  }
  emit(t, c, out);
}

void write_constants(std::ostream& os, const Common& c) {
  const auto k = named_constants();
  auto fixed12 = [](double v) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(12);
    s << v;
    return s.str();
  };
  const std::pair<const char*, double> items[] = {{"b_star", k.b_star}, {"E_max", k.E_max},   {"b_bar", k.b_bar},
                                                  {"b_hat", k.b_hat},   {"b_tilde", k.b_tilde}, {"x_hat", k.x_hat},
                                                  {"E_zero", k.E_zero}};
  std::ostringstream buf;
  buf << "{\n  \"config\": {\"command\": \"limits\", \"kind\": \"constants\"},\n  \"constants\": {\n";
  for (std::size_t i = 0; i < std::size(items); ++i) {
    buf << "    \"" << items[i].first << "\": " << fixed12(items[i].second) << (i + 1 < std::size(items) ? "," : "") << '\n';
  }
  buf << "  }\n}\n";
  if (c.out_path.empty()) {
    os << buf.str();
    return;
  }
  std::ofstream file(c.out_path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file " + c.out_path);
  file << buf.str();
}

void cmd_limits(const Params& p, const Common& c, std::ostream& out) {
  if (p.kind == "constants") {
    write_constants(out, c);
    return;
  }
  const auto grid = parse_grid(p.grid);
  auto need = [&](const std::optional<double>& v, const char* flag) {
    require(v.has_value(), "limits --kind " + p.kind + " requires " + flag);
    return *v;
  };
  std::string arg = "x";
  std::string value = p.kind;
  std::function<double(double)> fn;
  if (p.kind == "G") {
    const double b = need(p.b, "--b");
    arg = "y";
    fn = [b](double y) { return G(b, y); };
  } else if (p.kind == "F") {
    const double b = need(p.b, "--b");
    fn = [b](double x) { return F(b, x); };
  } else if (p.kind == "f") {
    const double b = need(p.b, "--b");
    fn = [b](double x) { return f_density(b, x); };
  } else if (p.kind == "E") {
    arg = "b";
    fn = expected_pos;
  } else if (p.kind == "h") {
    const double x = need(p.x, "--x");
    arg = "b";
    fn = [x](double b) { return h_density(x, b); };
  } else if (p.kind == "first") {
    arg = "b";
    value = "density";
    fn = first_pos_macro_limit;
  } else if (p.kind == "meso") {
    arg = "d";
    value = "density";
    fn = first_pos_meso_limit;
  } else if (p.kind == "last") {
    arg = "b";
    value = "density";
    fn = last_pos_macro_limit;
  } else if (p.kind == "pair") {
    const double b = need(p.b, "--b");
    arg = "b2";
    value = "P";
    fn = [b](double b2) { return pair_inversion_prob(b, b2); };
  } else {
    throw std::invalid_argument("unknown limit kind " + p.kind);
  }
  Table t;
  t.config["command"] = "limits";
  t.config["kind"] = p.kind;
  if (p.b) t.config["b"] = *p.b;
  if (p.x) t.config["x"] = *p.x;
  t.config["grid"] = p.grid;
  t.columns = {arg, value};
  for (double g : grid) t.rows.push_back({g, real(fn(g))});
  emit(t, c, out);
}

SampleOptions sample_options(const Params& p, const Common& c) {
  require(p.n >= 1, "--n must be at least 1");
  require(p.reps >= 1, "--reps must be at least 1");
  return SampleOptions{p.reps, c.seed, c.threads};
}

void echo_sampling(Table& t, const std::string& kind, const Params& p, const Common& c) {
  t.config["command"] = "simulate";
  t.config["kind"] = kind;
  t.config["n"] = p.n;
  t.config["reps"] = p.reps;
  t.config["seed"] = c.seed;
  t.config["window"] = default_window(p.n);
}

void sim_histogram(const std::string& kind, const Params& p, const Common& c, std::ostream& out) {
  const auto opt = sample_options(p, c);
  Histogram h;
  if (kind == "position") {
    require(p.card >= 1 && p.card <= p.n, "simulate position: --card must lie in 1..n");
    h = sample_position_hist(p.n, p.card, opt);
  } else if (kind == "first") {
    h = sample_first_card_hist(p.n, opt);
  } else {
    h = sample_last_card_hist(p.n, opt);
  }
  Table t = histogram_rows(h);
  Json label = t.config["label"];
  t.config = Json::object();
  echo_sampling(t, kind, p, c);
  t.config["label"] = label;
  if (kind == "position") {
    const double b = static_cast<double>(p.card) / p.n;
    t.config["card"] = p.card;
    t.summary["b"] = b;
    t.summary["sup_distance_to_limit_cdf"] = sup_distance_to_limit(h, b);
  }
  emit(t, c, out);
}

void sim_joint(const Params& p, const Common& c, std::ostream& out) {
  const auto opt = sample_options(p, c);
  require(!p.cards.empty(), "simulate joint: --cards is required");
  const auto js = joint_position_sample(p.n, p.cards, opt);
  Table t;
  echo_sampling(t, "joint", p, c);
  t.config["cards"] = p.cards;
  t.columns = {"card_a", "card_b", "a_left_of_b", "stderr", "limit"};
  for (std::size_t a = 0; a < p.cards.size(); ++a) {
    for (std::size_t b = a + 1; b < p.cards.size(); ++b) {
      const double f = js.in_order_fraction(a, b);
      const double limit = pair_inversion_prob(static_cast<double>(p.cards[a]) / p.n,
                                               static_cast<double>(p.cards[b]) / p.n);
      t.rows.push_back({p.cards[a], p.cards[b], f, std::sqrt(f * (1 - f) / static_cast<double>(p.reps)), limit});
    }
  }
  if (p.cards.size() >= 2) t.summary["independence_distance"] = js.independence_distance();
  emit(t, c, out);
}

void sim_event(const Params& p, const Common& c, std::ostream& out) {
  const auto opt = sample_options(p, c);
  const EventSpec spec{p.M, p.L};
  validate_event(p.n, spec);
  const auto est = estimate_event_A(p.n, spec, opt);
  Table t;
  echo_sampling(t, "event", p, c);
  t.config["M"] = p.M;
  t.config["L"] = p.L;
  t.config["K"] = event_card_bound(p.n, p.M);
  t.columns = {"p_hat", "stderr", "uniform", "gap"};
  t.rows.push_back({est.p_hat, est.stderr_p, est.uniform, est.gap()});
  emit(t, c, out);
}

void sim_walk(const Params& p, const Common& c, std::ostream& out) {
  require(p.n >= 1, "--n must be at least 1");
  require(p.steps >= 1, "simulate walk: --m must be at least 1");
  require(p.reps >= 1, "--reps must be at least 1");
  const auto report = convolution_walk(WalkConfig{p.n, p.steps, p.reps, c.seed, c.threads});
  Table t;
  echo_sampling(t, "walk", p, c);
  t.config["m"] = p.steps;
  t.config["exact"] = report.exact;
  t.config["note"] = report.exact ? "exact m-fold convolution" : "exploratory Monte Carlo lower bound";
  t.columns = {"m", "tv", "stderr", "numerator", "denominator", "statistic"};
  for (const auto& s : report.steps) {
    Json num = nullptr, den = nullptr;
    if (s.exact_tv) {
      num = to_string(numerator(*s.exact_tv));
      den = to_string(denominator(*s.exact_tv));
    }
    t.rows.push_back({s.m, s.tv, s.stderr_tv, num, den, s.statistic});
  }
  emit(t, c, out);
}

void cmd_tv(const Params& p, const Common& c, std::ostream& out) {
  require(p.n >= 1, "--n must be at least 1");
  Table t;
  t.config["command"] = "tv";
  t.config["n"] = p.n;
  t.columns = {"quantity", "kind", "numerator", "denominator", "float", "stderr"};
  if (p.n <= kMaxBruteForceN) {
    const auto tv = tv_to_uniform(p.n);
    t.rows.push_back({"tv_to_uniform", "exact", to_string(numerator(tv.exact)), to_string(denominator(tv.exact)),
                      tv.value, 0.0});
  } else {
    require(p.reps >= 1, "--reps must be at least 1");
    t.config["reps"] = p.reps;
    t.config["seed"] = c.seed;
    const auto report = convolution_walk(WalkConfig{p.n, 1, p.reps, c.seed, c.threads});
    const auto& s = report.steps.front();
    t.rows.push_back({"tv_to_uniform", "lower bound (" + s.statistic + ")", nullptr, nullptr, s.tv, s.stderr_tv});
  }
  const auto sep = separation_distance(p.n);
  t.rows.push_back({"separation", sep.exhaustive ? "exact" : "exact (closed form)", to_string(numerator(sep.exact)),
                    to_string(denominator(sep.exact)), sep.value, 0.0});
  emit(t, c, out);
}

int cmd_verify(const Params& p, const Common& c, std::ostream& out) {
  AcceptanceOptions opt;
  opt.threads = c.threads;
  if (c.seed != 0) opt.seed = c.seed;
  opt.only = p.only;
  int passed = 0, total = 0;
  run_acceptance(opt, [&](const CriterionResult& r) {
    out << format_result(r) << std::endl;
    passed += r.passed ? 1 : 0;
    ++total;
  });
  out << passed << "/" << total << " criteria passed\n";
  return passed == total ? kExitOk : kExitVerifyFailed;
}

void add_common(CLI::App* sub, Common& c, bool formats = true) {
  if (formats) {
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out_path, "write the result to this file");
  }
  sub->add_option("--threads", c.threads, "worker cap (0 = all cores); never changes results");
  sub->add_option("--seed", c.seed, "64-bit seed");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Card-cyclic to random insertion shuffle: exact laws, limits and simulation", "ccshuffle"};
  app.require_subcommand(1);
  Common c;
  Params p;

  auto* exact = app.add_subcommand("exact", "full law on S_n (n <= 8) with TV and separation");
  exact->add_option("--n", p.n, "deck size")->required();
  add_common(exact, c);

  auto* marginal = app.add_subcommand("marginal", "card in the first or last position");
  marginal->add_option("--n", p.n, "deck size")->required();
  marginal->add_option("--which", p.which, "first or last")->check(CLI::IsMember({"first", "last"}));
  marginal->add_option("--j", p.j, "card number");
  marginal->add_flag("--all", p.all, "every j = 1..n");
  marginal->add_flag("--rescale", p.rescale, "add a column n * p");
  marginal->add_option("--mode", p.mode, "auto, exact or log")->check(CLI::IsMember({"auto", "exact", "log"}));
  add_common(marginal, c);

  auto* limits = app.add_subcommand("limits", "tabulate limit laws and constants");
  limits->add_option("--kind", p.kind, "G, F, f, E, h, first, meso, last, pair or constants")
      ->required()
      ->check(CLI::IsMember({"G", "F", "f", "E", "h", "first", "meso", "last", "pair", "constants"}));
  limits->add_option("--b", p.b, "card fraction b");
  limits->add_option("--x", p.x, "position fraction x");
  limits->add_option("--grid", p.grid, "start:stop:step");
  add_common(limits, c);

  auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo");
  simulate->require_subcommand(1);
  std::vector<CLI::App*> sims;
  for (const char* kind : {"position", "first", "last", "joint", "event", "walk"}) {
    auto* s = simulate->add_subcommand(kind);
    s->add_option("--n", p.n, "deck size")->required();
    s->add_option("--reps", p.reps, "number of samples");
    add_common(s, c);
    sims.push_back(s);
  }
  sims[0]->description("position of one card");
  sims[0]->add_option("--card", p.card, "card number")->required();
  sims[1]->description("card in position 1");
  sims[2]->description("card in position n");
  sims[3]->description("joint positions of several cards");
  sims[3]->add_option("--cards", p.cards, "comma separated card numbers")->required()->delimiter(',');
  sims[4]->description("event: a card <= M sqrt(n) among the first L positions");
  sims[4]->add_option("--M", p.M, "card bound multiplier")->required();
  sims[4]->add_option("--L", p.L, "number of leading positions")->required();
  sims[5]->description("TV to uniform after m = 1..m shuffles (exploratory for n > 5)");
  sims[5]->add_option("--m", p.steps, "number of shuffles")->required();

  auto* tv = app.add_subcommand("tv", "TV and separation distance to uniform");
  tv->add_option("--n", p.n, "deck size")->required();
  tv->add_option("--reps", p.reps, "samples for the n > 8 lower bound");
  add_common(tv, c);

  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--only", p.only, "criterion numbers")->delimiter(',');
  add_common(verify, c, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*exact) {
      cmd_exact(p, c, out);
    } else if (*marginal) {
      cmd_marginal(p, c, out);
    } else if (*limits) {
      cmd_limits(p, c, out);
    } else if (*tv) {
      cmd_tv(p, c, out);
    } else if (*verify) {
      return cmd_verify(p, c, out);
    } else {
      for (auto* s : sims) {
        if (!*s) continue;
        const std::string kind = s->get_name();
        if (kind == "joint") {
          sim_joint(p, c, out);
        } else if (kind == "event") {
          sim_event(p, c, out);
        } else if (kind == "walk") {
          sim_walk(p, c, out);
        } else {
          sim_histogram(kind, p, c, out);
        }
      }
    }
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitSizeGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace ccshuffle
