#pragma once

#include <functional>
#include <span>

namespace leaky::specfun {

/// Tolerances and panel policy for the adaptive quadrature engine.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_depth = 40;
  int nodes_per_panel = 15;  // engine uses 15-point Kronrod panels; >15 pre-splits
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

/// Bessel function of the first kind, order one. Power series up to
/// x_switch, Hankel asymptotic expansion beyond; odd in x.
double bessel_j1(double x);

/// Branch point between the series and asymptotic evaluation of J1.
inline constexpr double j1_switch = 16.0;

/// Coefficient a_k of the order-one Hankel expansion,
/// a_k = prod_{j=1..k} (4 - (2j-1)^2) / (8 j); defined for 0 <= k < 25.
double j1_hankel_coeff(int k);

/// Fourier transform of the half-circle profile sqrt(max{1-x^2,0}):
/// J1(2*pi*y)/(2*y) for y != 0, pi/2 at y = 0.
double profile_transform(double y);

/// Adaptive Gauss-Kronrod integration of f over [a, b].
/// The error estimate is met when
///   error_estimate <= max(abs_tol, rel_tol * |value|),
/// otherwise converged is false and the best estimate is returned.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureSpec& spec = {});

/// Deterministic pairwise summation (fixed reduction order).
double pairwise_sum(std::span<const double> values);

}  // namespace leaky::specfun
