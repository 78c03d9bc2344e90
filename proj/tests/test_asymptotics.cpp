#include "ccshuffle/asymptotics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace ccshuffle;

namespace {

constexpr double kE = std::numbers::e;

// Composite Simpson on [a, b] with m (even) panels.
template <class Fn>
double simpson(Fn f, double a, double b, int m = 20000) {
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

}  // namespace

TEST_CASE("G endpoints, breakpoint and monotonicity") {
  for (double b : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
    CHECK(G(b, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(G(b, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double g = G(b, i / 1000.0);
      CHECK(g > prev);
      prev = g;
    }
  }
  for (int i = 0; i <= 10; ++i) CHECK(G(1.0, i / 10.0) == doctest::Approx(i / 10.0).epsilon(1e-14));
  const double ys = breakpoint(0.5);
  const double lin = ys * std::exp(0.5);
  const double curved = std::exp((1 - ys) * std::exp(-0.5)) - (1 - ys) * std::exp(0.5);
  CHECK(std::abs(lin - curved) < 1e-12);
  CHECK(std::abs(G(0.5, ys) - lin) < 1e-12);
  CHECK_THROWS_AS(G(0.5, 1.5), std::domain_error);
  CHECK_THROWS_AS(G(-0.1, 0.5), std::domain_error);
}

TEST_CASE("F inverts G") {
  for (double b : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CHECK(F(b, 0.0) == 0.0);
    CHECK(F(b, 1.0) == doctest::Approx(1.0));
    for (int i = 0; i < 1000; ++i) {
      const double x = i / 999.0;
      CHECK(std::abs(G(b, F(b, x)) - x) < 1e-10);
    }
  }
  CHECK(F(1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("density f") {
  for (int i = 0; i <= 10; ++i) CHECK(f_density(1.0, i / 10.0) == 1.0);
  CHECK(x_break(0.5) == doctest::Approx(std::exp(0.5) - 0.5 * kE).epsilon(1e-15));
  CHECK(x_break(0.5) > 0.1);
  CHECK(f_density(0.5, 0.1) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(f_density(0.5, 1.0) == doctest::Approx(std::exp(-0.5) / (1 - std::exp(-1.0))).epsilon(1e-9));
  CHECK(std::isinf(f_density(0.0, 0.0)));
  // Right-continuous jump at x_b.
  for (double b : {0.2, 0.5, 0.8}) {
    const double xb = x_break(b);
    CHECK(f_density(b, xb) == doctest::Approx(std::exp(b - 1) / (1 - std::exp(-b))).epsilon(1e-6));
    CHECK(f_density(b, xb - 1e-9) == doctest::Approx(std::exp(b - 1)));
  }
  // Decreasing and convex right of the jump.
  for (double b : {0.1, 0.4, 0.7}) {
    const double xb = x_break(b);
    const double h = (1 - xb) / 200;
    for (int i = 1; i < 199; ++i) {
      const double x = xb + i * h;
      CHECK(f_density(b, x + h) < f_density(b, x));
      CHECK(f_density(b, x - h) - 2 * f_density(b, x) + f_density(b, x + h) >= -1e-9);
    }
  }
}

TEST_CASE("x_b and its inverse") {
  CHECK(x_break(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(x_break(1.0) == doctest::Approx(1.0));
  CHECK(std::abs(b_of_x(x_break(0.3)) - 0.3) < 1e-10);
  double prev = -1;
  for (int i = 0; i <= 100; ++i) {
    const double v = x_break(i / 100.0);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("integrals against a Simpson oracle") {
  for (int k = 1; k <= 9; ++k) {
    const double b = k / 10.0;
    const double xb = x_break(b);
    // Simpson on each smooth piece.
    const double below = std::nextafter(xb, 0.0);
    const double mass = simpson([b, below](double x) { return f_density(b, std::min(x, below)); }, 0.0, xb, 2000) +
                        simpson([b](double x) { return f_density(b, x); }, xb, 1.0, 2000);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(integrate([b](double x) { return f_density(b, x); }, 0, 1, {xb}) == doctest::Approx(1.0).epsilon(1e-10));
    const double mean = simpson([b](double y) { return G(b, y); }, 0.0, breakpoint(b), 2000) +
                        simpson([b](double y) { return G(b, y); }, breakpoint(b), 1.0, 2000);
    CHECK(expected_pos(b) == doctest::Approx(mean).epsilon(1e-10));
    CHECK(integrate([b](double x) { return 1 - F(b, x); }, 0, 1, {xb}) == doctest::Approx(expected_pos(b)).epsilon(1e-10));
  }
  CHECK(integrate_singular([](double x) { return f_density(0.0, x); }, 0, 1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(simpson(expected_pos, 0, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("expected position") {
  CHECK(expected_pos(0.0) == doctest::Approx(kE / 2 - 1).epsilon(1e-14));
  CHECK(expected_pos(1.0) == doctest::Approx(0.5).epsilon(1e-14));
  const auto c = named_constants();
  for (int i = 0; i <= 100; ++i) {
    const double b = i / 100.0;
    if (b <= c.b_bar) CHECK(expected_pos(b) >= b - 1e-12);
    if (b >= c.b_bar) CHECK(expected_pos(b) <= b + 1e-12);
    CHECK(expected_pos(b) <= c.E_max + 1e-12);
  }
}

TEST_CASE("named constants") {
  const auto c = named_constants();
  CHECK(c.b_star == doctest::Approx(0.722).epsilon(7e-4));
  CHECK(c.E_max == doctest::Approx(0.564).epsilon(1e-3));
  CHECK(c.b_bar == doctest::Approx(0.545).epsilon(1e-3));
  CHECK(c.b_hat == doctest::Approx(0.768).epsilon(1e-3));
  CHECK(c.b_tilde == doctest::Approx(0.380).epsilon(2e-3));
  CHECK(c.x_hat == doctest::Approx(0.525).epsilon(1e-3));
  CHECK(c.E_zero == doctest::Approx(0.359).epsilon(1e-3));
  CHECK(std::abs(kE - std::exp(c.b_star) - 0.5 * std::exp(1 - c.b_star)) < 1e-12);
  CHECK(std::abs(expected_pos(c.b_bar) - c.b_bar) < 1e-12);
  CHECK(std::abs((1 - c.b_hat) * std::exp(c.b_hat) - 0.5) < 1e-12);
  CHECK(std::abs(expected_pos(c.b_tilde) - 0.5) < 1e-12);
}

TEST_CASE("limit maps reproduce G") {
  const double b = 0.5, d = breakpoint(0.5);
  CHECK(std::abs(gamma_limit(b, d) - d) < 1e-12);
  CHECK(std::abs(b - (1 - d) * (1 - std::exp(-b)) - d) < 1e-12);
  for (int i = 0; i < 100; ++i) {
    for (int k = 0; k < 100; ++k) {
      const double bb = i / 99.0, dd = k / 99.0;
      CHECK(std::abs(final_pos_map(bb, dd) - G(bb, dd)) < 1e-12);
    }
    CHECK(final_pos_map(i / 99.0, 1.0) == doctest::Approx(1.0));
  }
}

TEST_CASE("h densities") {
  for (int i = 0; i <= 10; ++i) {
    const double b = i / 10.0;
    CHECK(h_density(1.0, b) == doctest::Approx(std::exp(b) / (kE - 1)).epsilon(1e-9));
  }
  const auto h0 = h_law(0.0);
  REQUIRE(h0.atom_location.has_value());
  CHECK(*h0.atom_location == 0.0);
  CHECK(h0.atom_mass == doctest::Approx(std::exp(-1.0)));
  CHECK(simpson(h0.density, 0, 1) == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-10));
  CHECK(h0.total_mass == doctest::Approx(1.0));
  CHECK(simpson(h_law(1.0).density, 0, 1) == doctest::Approx(1.0).epsilon(1e-10));
  const double x = 0.3, bx = b_of_x(x);
  CHECK(h_density(x, 0.9) == doctest::Approx(std::exp(-0.1)));
  CHECK(h_density(x, 0.0) == doctest::Approx(std::exp(bx - 1) / (std::exp(bx) - 1)).epsilon(1e-6));
  const double step = bx / 100;
  for (int i = 1; i < 99; ++i) {
    const double b = i * step;
    CHECK(h_density(x, b + step) > h_density(x, b));
    CHECK(h_density(x, b - step) - 2 * h_density(x, b) + h_density(x, b + step) >= -1e-9);
  }
  CHECK(h_density(x, bx - 1e-9) == doctest::Approx(std::exp(bx - 1) / (1 - std::exp(-bx))).epsilon(1e-6));
}

TEST_CASE("first and last position limits") {
  const auto macro = first_pos_limit(FirstPosScale::Macroscopic);
  CHECK(macro.atom_mass + simpson(macro.density, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  const auto meso = first_pos_limit(FirstPosScale::Mesoscopic);
  CHECK(meso.atom_mass == 0.0);
  CHECK(meso.density(0.0) == doctest::Approx(std::exp(-1.0) * std::sqrt(std::numbers::pi / 2)).epsilon(1e-14));
  CHECK(simpson(meso.density, 0, 12, 40000) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(meso.total_mass == doctest::Approx(std::exp(-1.0)));
  CHECK(first_pos_sup_limit() == doctest::Approx(std::sqrt(2 * std::numbers::pi) / (2 * kE)));
  CHECK(first_pos_inf_limit() == doctest::Approx(std::exp(-1.0)));
  CHECK(first_pos_macro_limit(0.5) == doctest::Approx(std::exp(-0.5)));

  const auto last = last_pos_limit();
  CHECK(simpson(last.density, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(last_pos_lattice_limit(0) == doctest::Approx(1.0));
  double prev = 0;
  for (int l = 0; l < 25; ++l) {
    CHECK(last_pos_lattice_limit(l) > prev);
    prev = last_pos_lattice_limit(l);
  }
  CHECK(prev == doctest::Approx(last_pos_edge_limit()).epsilon(1e-10));
  CHECK(last_pos_edge_limit() == doctest::Approx(kE / (kE - 1)));
}

TEST_CASE("pair inversion probabilities") {
  for (double b : {0.05, 0.3, 0.5, 0.768, 0.95}) {
    CHECK(std::abs(pair_inversion_prob(b, b) - 0.5) < 1e-8);
    CHECK(std::abs(pair_inversion_prob(b, 1.0) - (1 - expected_pos(b))) < 1e-8);
  }
  // Independent route: the defining integral on x, Simpson per smooth piece.
  const double b1 = 0.3, b2 = 0.7;
  const double x1 = x_break(b1), x2 = x_break(b2);
  auto integrand = [&](double x) { return f_density(b1, x) * (1 - F(b2, x)); };
  const double below = std::nextafter(x1, 0.0);
  auto left = [&](double x) { return integrand(std::min(x, below)); };
  const double direct = simpson(left, 0, x1, 4000) + simpson(integrand, x1, x2, 4000) +
                        simpson(integrand, x2, 1, 4000);
  CHECK(pair_inversion_prob(b1, b2) == doctest::Approx(direct).epsilon(1e-8));
  CHECK(pair_inversion_prob(b1, b2) + pair_inversion_prob(b2, b1) == doctest::Approx(1.0).epsilon(1e-9));
  for (double b : {0.3, 0.768, 0.9}) {
    const double slope = (pair_inversion_prob(b, b + 1e-3) - 0.5) / 1e-3;
    CHECK(std::abs(slope - ((1 - b) * std::exp(b) - 0.5)) < 5e-3);
  }
}
