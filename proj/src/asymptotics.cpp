#include "ccshuffle/asymptotics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ccshuffle {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_unit(const char* name, double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error(std::string(name) + " = " + std::to_string(v) + " outside [0, 1]");
  }
}

// Bisection for a root of a function with g(lo) <= 0 <= g(hi) (or reversed
// signs), run until the bracket is below one ulp-scale of the root.
template <class Fn>
double bisect_root(Fn g, double lo, double hi) {
  auto tol = [](double a, double b) {
    return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b)) ||
           std::abs(b - a) <= 1e-300;
  };
  std::uintmax_t max_iter = 2000;
  auto [a, b] = boost::math::tools::bisect(g, lo, hi, tol, max_iter);
  return 0.5 * (a + b);
}

// e^u - e u = e (e^v - 1 - v) with v = u - 1, u = (1 - y) e^{-b}. The
// right-hand form keeps full relative accuracy near b = 0, y = 0.
double shifted(double b, double y) { return (1.0 - y) * std::exp(-b) - 1.0; }

double expm1_minus_x(double v) {
  if (std::abs(v) > 0.1) return std::expm1(v) - v;
  double term = v * v / 2.0, sum = term;
  for (int k = 3; k < 30 && std::abs(term) > 1e-18 * std::abs(sum); ++k) {
    term *= v / k;
    sum += term;
  }
  return sum;
}

}  // namespace

double breakpoint(double b) {
  check_unit("b", b);
  return 1.0 - (1.0 - b) * std::exp(b);
}

double G(double b, double y) {
  check_unit("y", y);
  if (y <= breakpoint(b)) return y * std::exp(1.0 - b);
  return kE * expm1_minus_x(shifted(b, y));
}

double G_slope(double b, double y) {
  check_unit("y", y);
  if (y < breakpoint(b)) return std::exp(1.0 - b);
  return -std::exp(1.0 - b) * std::expm1(shifted(b, y));
}

double x_break(double b) {
  check_unit("b", b);
  return std::exp(1.0 - b) - (1.0 - b) * kE;
}

double F(double b, double x) {
  check_unit("x", x);
  const double xb = x_break(b);
  if (x <= xb) return x * std::exp(b - 1.0);
  if (x >= 1.0) return 1.0;
  const double lo = breakpoint(b);
  return bisect_root([&](double y) { return G(b, y) - x; }, lo, 1.0);
}

double b_of_x(double x) {
  check_unit("x", x);
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return bisect_root([&](double b) { return x_break(b) - x; }, 0.0, 1.0);
}

double f_density(double b, double x) {
  check_unit("b", b);
  check_unit("x", x);
  if (b == 1.0) return 1.0;
  if (x < x_break(b)) return std::exp(b - 1.0);
  // Curved branch even if rounding puts F(b, x_b) just below y*.
  const double y = std::max(F(b, x), breakpoint(b));
  const double slope = -std::exp(1.0 - b) * std::expm1(shifted(b, y));
  if (slope <= 0.0) return kInf;  // only at b = 0, x = 0
  return 1.0 / slope;
}

double expected_pos(double b) {
  check_unit("b", b);
  return kE * b + 0.5 * std::exp(1.0 - b) - std::exp(b);
}

NamedConstants named_constants() {
  NamedConstants c{};
  c.b_star = bisect_root([](double b) { return kE - std::exp(b) - 0.5 * std::exp(1.0 - b); }, 0.0, 1.0);
  c.E_max = expected_pos(c.b_star);
  c.b_bar = bisect_root([](double b) { return expected_pos(b) - b; }, 0.0, 1.0);
  c.b_hat = bisect_root([](double b) { return (1.0 - b) * std::exp(b) - 0.5; }, 0.0, 1.0);
  // E < 1/2 at 0 and E > 1/2 at its maximum; E returns to 1/2 only at b = 1.
  c.b_tilde = bisect_root([](double b) { return expected_pos(b) - 0.5; }, 0.0, c.b_star);
  c.x_hat = 0.5 * kE - (1.0 - std::numbers::ln2) * kE;
  c.E_zero = expected_pos(0.0);
  return c;
}

double gamma_limit(double b, double d) {
  check_unit("b", b);
  check_unit("d", d);
  if (d >= breakpoint(b)) return b - (1.0 - d) * (1.0 - std::exp(-b));
  return d;
}

double t_limit(double gamma, double d) {
  check_unit("gamma", gamma);
  check_unit("d", d);
  return 1.0 - gamma - (1.0 - d) * std::exp(d - gamma);
}

double v_limit(double gamma, double t, double b, double d) {
  check_unit("gamma", gamma);
  check_unit("b", b);
  check_unit("d", d);
  return (gamma + t) * (std::exp(1.0 - b - d + gamma) - 1.0);
}

double final_pos_map(double b, double d) {
  const double gamma = gamma_limit(b, d);
  const double t = t_limit(gamma, d);
  return gamma + t + v_limit(gamma, t, b, d);
}

double h_density(double x, double b) {
  check_unit("x", x);
  check_unit("b", b);
  // f_b(1) = e^{b-1} / (1 - e^{-1}) for b < 1; at b = 1 this keeps h_1
  // continuous where f_1 = 1 would not.
  if (x == 1.0) return std::exp(b) / (kE - 1.0);
  return f_density(b, x);
}

LimitDensity h_law(double x) {
  check_unit("x", x);
  LimitDensity law;
  if (x == 0.0) {
    law.atom_location = 0.0;
    law.atom_mass = std::exp(-1.0);
    law.density = [](double b) { return std::exp(b - 1.0); };
  } else {
    law.density = [x](double b) { return h_density(x, b); };
  }
  law.total_mass = 1.0;
  return law;
}

LimitDensity first_pos_limit(FirstPosScale scale) {
  LimitDensity law;
  if (scale == FirstPosScale::Macroscopic) {
    law.atom_location = 0.0;
    law.atom_mass = std::exp(-1.0);
    law.density = [](double x) { return std::exp(x - 1.0); };
    law.total_mass = 1.0;
  } else {
    law.support_end = kInf;
    law.density = first_pos_meso_limit;
    law.total_mass = std::exp(-1.0);
  }
  return law;
}

double first_pos_macro_limit(double b) {
  check_unit("b", b);
  return std::exp(b - 1.0);
}

double first_pos_meso_limit(double d) {
  if (!(d >= 0.0)) throw std::domain_error("d must be nonnegative");
  // int_d^inf e^{-y^2/2} dy = sqrt(pi/2) erfc(d / sqrt 2)
  return std::exp(-1.0) * std::sqrt(std::numbers::pi / 2.0) * std::erfc(d / std::numbers::sqrt2);
}

double first_pos_sup_limit() { return std::sqrt(2.0 * std::numbers::pi) / (2.0 * kE); }

double first_pos_inf_limit() { return std::exp(-1.0); }

LimitDensity last_pos_limit() {
  LimitDensity law;
  law.density = last_pos_macro_limit;
  law.total_mass = 1.0;
  return law;
}

double last_pos_macro_limit(double b) {
  check_unit("b", b);
  return std::exp(b) / (kE - 1.0);
}

double last_pos_lattice_limit(int l) {
  if (l < 0) throw std::domain_error("l must be nonnegative");
  return (kE - std::exp(-static_cast<double>(l))) / (kE - 1.0);
}

double last_pos_edge_limit() { return kE / (kE - 1.0); }

double pair_inversion_prob(double b1, double b2) {
  check_unit("b1", b1);
  check_unit("b2", b2);
  // Substituting x = G_{b1}(y) turns f_{b1}(x) dx into dy. The integrand has
  // kinks where y crosses b1's breakpoint and where G_{b1}(y) crosses x_{b2}.
  const double kink1 = breakpoint(b1);
  const double kink2 = F(b1, x_break(b2));
  return integrate([&](double y) { return 1.0 - F(b2, G(b1, y)); }, 0.0, 1.0, {kink1, kink2});
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::vector<double> breaks, double tol) {
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  double lo = a;
  for (double hi : breaks) {
    if (hi <= lo || hi > b) continue;
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 20, tol, &err);
    lo = hi;
  }
  return total;
}

double integrate_singular(const std::function<double(double)>& f, double a, double b, double tol) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b, tol);
}

}  // namespace ccshuffle
