#include "leaky/quasimode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "leaky/specfun.hpp"

namespace leaky::quasimode {

namespace {

constexpr double kPi = M_PI;

struct OneD {
  double value;
  double error;
  bool converged;
};

// Integrate g over [lo, hi] in the scaled coordinate t in [0,1], with
// breakpoints at the chi edges and panels no wider than one sine
// half-period (>= 8 nodes per half-period with 15-point panels).
OneD integrate_scaled(const std::function<double(double)>& g, double lo,
                      double hi, double eps, int m, double tol) {
  if (!(lo < hi)) return {0.0, 0.0, true};
  std::vector<double> cuts = {lo, hi};
  for (double c : {eps, 1.0 - eps})
    if (c > lo && c < hi) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());

  specfun::QuadratureSpec spec;
  spec.rel_tol = tol;
  spec.abs_tol = tol * 1e-3;

  const double max_width = 1.0 / std::max(1, 2 * m);
  OneD out{0.0, 0.0, true};
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
    const double w = (b - a) / pieces;
    for (int p = 0; p < pieces; ++p) {
      const auto r = specfun::integrate(g, a + p * w, a + (p + 1) * w, spec);
      out.value += r.value;
      out.error += r.error_estimate;
      out.converged = out.converged && r.converged;
    }
  }
  return out;
}

}  // namespace

void check_index(const LeakyDomain& domain, Index idx) {
  if (idx.i < 1 || idx.i > domain.truncation)
    throw std::invalid_argument("quasimode index i out of range");
  if (idx.m < 1 || idx.n < 1)
    throw std::invalid_argument("quasimode indices m, n must be >= 1");
}

double quasi_eigenvalue(const LeakyDomain& domain, Index idx) {
  check_index(domain, idx);
  const double mu_i = domain.mu[idx.i - 1];
  const double xi_i = domain.xi[idx.i - 1];
  return static_cast<double>(idx.n) * idx.n * mu_i +
         static_cast<double>(idx.m) * idx.m * xi_i;
}

double evaluate(const LeakyDomain& domain, const Mollifier& moll, Index idx,
                double x, double y) {
  check_index(domain, idx);
  const double a = domain.rect_left(idx.i);
  const double l = domain.ell[idx.i - 1];
  const double delta = domain.delta[idx.i - 1];
  if (x <= a || x >= a + l || y <= 0.0 || y >= delta) return 0.0;
  const double t = (x - a) / l;
  return moll.chi(t) * std::sin(kPi * idx.m * t) *
         std::sin(kPi * idx.n * y / delta);
}

double residual(const LeakyDomain& domain, const Mollifier& moll, Index idx,
                double x, double y) {
  check_index(domain, idx);
  const double a = domain.rect_left(idx.i);
  const double l = domain.ell[idx.i - 1];
  const double delta = domain.delta[idx.i - 1];
  if (x <= a || x >= a + l || y <= 0.0 || y >= delta) return 0.0;
  const double t = (x - a) / l;
  const double longitudinal =
      2.0 * kPi * idx.m * moll.chi_prime(t) * std::cos(kPi * idx.m * t) +
      moll.chi_double_prime(t) * std::sin(kPi * idx.m * t);
  return longitudinal / (l * l) * std::sin(kPi * idx.n * y / delta);
}

Report report(const LeakyDomain& domain, const Mollifier& moll, Index idx,
              double quadrature_tol) {
  check_index(domain, idx);
  if (!(quadrature_tol > 0.0))
    throw std::invalid_argument("quadrature_tol must be positive");
  const double l = domain.ell[idx.i - 1];
  const double delta = domain.delta[idx.i - 1];
  const double eps = moll.eps();
  const int m = idx.m;

  // y-integral is (delta/2) exactly; x-integrals in t = (x - a_i)/l.
  const auto norm_t = integrate_scaled(
      [&](double t) {
        const double v = moll.chi(t) * std::sin(kPi * m * t);
        return v * v;
      },
      0.0, 1.0, eps, m, quadrature_tol);
  const auto resid_t = integrate_scaled(
      [&](double t) {
        const double v =
            2.0 * kPi * m * moll.chi_prime(t) * std::cos(kPi * m * t) +
            moll.chi_double_prime(t) * std::sin(kPi * m * t);
        return v * v;
      },
      0.0, 1.0, eps, m, quadrature_tol);

  Report rep;
  rep.index = idx;
  rep.quasi_eigenvalue = quasi_eigenvalue(domain, idx);
  rep.norm = std::sqrt(l * delta / 2.0 * norm_t.value);
  rep.residual_norm = std::sqrt(delta / (2.0 * l * l * l) * resid_t.value);
  rep.discrepancy = rep.residual_norm / rep.norm;
  rep.support_x0 = domain.rect_left(idx.i);
  rep.support_x1 = domain.rect_right(idx.i);
  rep.support_height = delta;
  rep.norm_rel_error = norm_t.error / std::max(norm_t.value, 1e-300);
  rep.residual_rel_error = resid_t.error / std::max(resid_t.value, 1e-300);
  rep.quadrature_converged = norm_t.converged && resid_t.converged;
  return rep;
}

double overlap(const LeakyDomain& domain, const Mollifier& moll, Index ia,
               Index ib, double quadrature_tol) {
  check_index(domain, ia);
  check_index(domain, ib);
  if (ia.i != ib.i || ia.n != ib.n) return 0.0;  // disjoint support / transverse
  const double l = domain.ell[ia.i - 1];
  const double delta = domain.delta[ia.i - 1];
  const double eps = moll.eps();
  const int m = ia.m, mp = ib.m;

  if (m == mp) {
    const auto full = integrate_scaled(
        [&](double t) {
          const double v = moll.chi(t) * std::sin(kPi * m * t);
          return v * v;
        },
        0.0, 1.0, eps, m, quadrature_tol);
    return l * delta / 2.0 * full.value;
  }

  // The plateau cancels exactly for m != m'; only the edges contribute:
  // (l delta/4) * int_edges [chi^2 - 1][cos(pi(m-m')t) - cos(pi(m+m')t)] dt
  const auto edge = [&](double lo, double hi) {
    return integrate_scaled(
        [&](double t) {
          const double c = moll.chi(t);
          return (c * c - 1.0) * (std::cos(kPi * (m - mp) * t) -
                                  std::cos(kPi * (m + mp) * t));
        },
        lo, hi, eps, std::max(m, mp), quadrature_tol);
  };
  const auto left = edge(0.0, eps);
  const auto right = edge(1.0 - eps, 1.0);
  return l * delta / 4.0 * (left.value + right.value);
}

double tail_mass(const LeakyDomain& domain, const Mollifier& moll, Index idx,
                 double x_cut, double quadrature_tol) {
  check_index(domain, idx);
  const double a = domain.rect_left(idx.i);
  const double l = domain.ell[idx.i - 1];
  if (x_cut <= a) return 1.0;
  if (x_cut >= a + l) return 0.0;
  const double t_cut = (x_cut - a) / l;
  const double eps = moll.eps();
  const int m = idx.m;
  const auto weight = [&](double t) {
    const double v = moll.chi(t) * std::sin(kPi * m * t);
    return v * v;
  };
  const auto beyond = integrate_scaled(weight, t_cut, 1.0, eps, m, quadrature_tol);
  const auto full = integrate_scaled(weight, 0.0, 1.0, eps, m, quadrature_tol);
  return std::sqrt(beyond.value / full.value);
}

}  // namespace leaky::quasimode
