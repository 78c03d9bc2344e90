#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace ccshuffle {

// Rescaled coordinates: b = card number / n, x = final position / n,
// y or d = reinsertion position / n. All live in [0, 1].

/// 1 - (1 - b) e^b: the reinsertion fraction where G_b changes branch.
double breakpoint(double b);

/// Limiting map from reinsertion fraction y to final position fraction of a
/// card with number ~ bn:
///   G_b(y) = y e^{1-b}                          for y <= breakpoint(b)
///          = e^{(1-y) e^{-b}} - (1-y) e^{1-b}  otherwise.
double G(double b, double y);

/// dG_b/dy.
double G_slope(double b, double y);

/// F_b = G_b^{-1}, the limiting CDF of the final position fraction. Closed
/// form on the linear branch, bisection on the other.
double F(double b, double x);

/// x_b = e^{1-b} - (1-b) e = G_b(breakpoint(b)); the jump of f_b.
double x_break(double b);

/// Inverse of x_break on [0, 1], by bisection.
double b_of_x(double x);

/// f_b(x) = 1 / G_b'(F_b(x)), right-continuous at x_b. f_0(0) = +infinity.
double f_density(double b, double x);

/// E(b) = e b + e^{1-b}/2 - e^b, the limiting mean of the position fraction.
double expected_pos(double b);

struct NamedConstants {
  double b_star;   // argmax of E: e - e^b - e^{1-b}/2 = 0
  double E_max;    // E(b_star)
  double b_bar;    // E(b) = b
  double b_hat;    // (1 - b) e^b = 1/2
  double b_tilde;  // E(b) = 1/2 on [0, 1)
  double x_hat;    // e/2 - (1 - ln 2) e
  double E_zero;   // E(0) = e/2 - 1
};

NamedConstants named_constants();

// Three-stage decomposition of the final position given reinsertion at d:
// gamma = earlier cards left of the card, t = cards it jumped over that stay
// left, v = later cards that land left of it.
double gamma_limit(double b, double d);
double t_limit(double gamma, double d);
double v_limit(double gamma, double t, double b, double d);
/// gamma + t + v; equals G(b, d).
double final_pos_map(double b, double d);

/// A limit law on [0, support_end]: an optional point mass plus a density.
struct LimitDensity {
  std::optional<double> atom_location;
  double atom_mass = 0.0;
  double support_end = 1.0;  // may be +infinity
  std::function<double(double)> density;
  double total_mass = 1.0;
};

/// h_x(b) = f_b(x): limiting density of the card number fraction found near
/// position xn. h_density(0, 0) is +infinity (the atom).
double h_density(double x, double b);

/// h_x as a law in b. For x = 0 the atom e^{-1} sits at b = 0 and the
/// density is e^{b-1}.
LimitDensity h_law(double x);

enum class FirstPosScale { Macroscopic, Mesoscopic };

/// Macroscopic: sigma_1 / n -> e^{-1} delta_0 + e^{x-1} dx on [0, 1].
/// Mesoscopic: sigma_1 / sqrt(n) has sub-probability density
/// e^{-1} int_x^inf e^{-y^2/2} dy on [0, inf), total mass e^{-1}.
LimitDensity first_pos_limit(FirstPosScale scale);

/// Pointwise limit of n p(sigma_1 = b n) for b in (0, 1]; e^{-1} at b = 0
/// (the intermediate regime).
double first_pos_macro_limit(double b);
/// Pointwise limit of sqrt(n) p(sigma_1 = d sqrt(n)).
double first_pos_meso_limit(double d);
/// sup over card sequences of limsup sqrt(n) p(sigma_1 = gamma_n): sqrt(2 pi)/(2e).
double first_pos_sup_limit();
/// inf over card sequences of liminf n p(sigma_1 = gamma_n): e^{-1}.
double first_pos_inf_limit();

/// sigma_n / n -> e^x / (e - 1) dx.
LimitDensity last_pos_limit();
double last_pos_macro_limit(double b);
/// n p(sigma_n = n - l) -> (e - e^{-l}) / (e - 1).
double last_pos_lattice_limit(int l);
/// e / (e - 1), the limit as l -> infinity.
double last_pos_edge_limit();

/// P(card ~ b1 n ends at or left of card ~ b2 n) in the independent limit:
/// int_0^1 f_{b1}(x) (1 - F_{b2}(x)) dx.
double pair_inversion_prob(double b1, double b2);

/// Adaptive Gauss-Kronrod over [a, b], split at `breaks` (those inside the
/// interval). Absolute tolerance is per piece.
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::vector<double> breaks = {}, double tol = 1e-12);

/// Tanh-sinh quadrature; tolerates integrable endpoint singularities.
double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-12);

}  // namespace ccshuffle
