#include "leaky/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "leaky/specfun.hpp"

namespace leaky {

namespace {

constexpr int kTableIntervals = 4096;

// bump(s) = exp(-1/(s(1-s))) on (0,1), 0 outside
double bump(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return std::exp(-1.0 / (s * (1.0 - s)));
}

double bump_prime(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double p = s * (1.0 - s);
  return bump(s) * (1.0 - 2.0 * s) / (p * p);
}

}  // namespace

Mollifier::Mollifier(double eps) : eps_(eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("Mollifier: eps must lie in (0, 1/2)");
  phi_table_.resize(kTableIntervals + 1);
  phi_table_[0] = 0.0;
  const double h = 1.0 / kTableIntervals;
  specfun::QuadratureSpec spec;
  spec.rel_tol = 1e-14;
  spec.abs_tol = 1e-18;
  for (int k = 1; k <= kTableIntervals; ++k) {
    const auto piece = specfun::integrate(bump, (k - 1) * h, k * h, spec);
    phi_table_[k] = phi_table_[k - 1] + piece.value;
  }
  phi1_ = phi_table_[kTableIntervals];
}

double Mollifier::edge(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  // Hermite cubic between table nodes; Phi' = bump is known exactly.
  const double u = t * kTableIntervals;
  const int k = std::min(static_cast<int>(u), kTableIntervals - 1);
  const double h = 1.0 / kTableIntervals;
  const double s = u - k;
  const double p0 = phi_table_[k], p1 = phi_table_[k + 1];
  const double d0 = bump(k * h) * h, d1 = bump((k + 1) * h) * h;
  const double s2 = s * s, s3 = s2 * s;
  const double phi = (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * d0 +
                     (-2 * s3 + 3 * s2) * p1 + (s3 - s2) * d1;
  // the cubic can undershoot in the ultra-flat first cell; Phi is monotone
  return std::clamp(phi, 0.0, phi1_) / phi1_;
}

double Mollifier::edge_prime(double t) const { return bump(t) / phi1_; }

double Mollifier::edge_double_prime(double t) const {
  return bump_prime(t) / phi1_;
}

double Mollifier::chi(double x) const {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  if (x < eps_) return edge(x / eps_);
  if (x <= 1.0 - eps_) return 1.0;
  return edge((1.0 - x) / eps_);
}

double Mollifier::chi_prime(double x) const {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  if (x < eps_) return edge_prime(x / eps_) / eps_;
  if (x <= 1.0 - eps_) return 0.0;
  return -edge_prime((1.0 - x) / eps_) / eps_;
}

double Mollifier::chi_double_prime(double x) const {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  if (x < eps_) return edge_double_prime(x / eps_) / (eps_ * eps_);
  if (x <= 1.0 - eps_) return 0.0;
  return edge_double_prime((1.0 - x) / eps_) / (eps_ * eps_);
}

}  // namespace leaky
