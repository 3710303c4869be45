// Independent oracles used by the test suites.  Everything here is
// deliberately naive (brute force, composite rules, extended precision)
// and must stay decoupled from the library implementation paths it checks.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "leaky/domain.hpp"

namespace oracles {

// Exhaustive triple loop over (i, m, n) with the canonical strict
// predicate n^2 mu_i + m^2 xi_i < lambda.
inline std::int64_t brute_tail_dirichlet(const leaky::LeakyDomain& d,
                                         double lambda) {
  std::int64_t count = 0;
  for (std::size_t k = 0; k < d.mu.size(); ++k) {
    for (std::int64_t n = 1;; ++n) {
      const double base = static_cast<double>(n) * static_cast<double>(n) * d.mu[k];
      if (!(base < lambda)) break;
      for (std::int64_t m = 1;; ++m) {
        const double val =
            base + static_cast<double>(m) * static_cast<double>(m) * d.xi[k];
        if (!(val < lambda)) break;
        ++count;
      }
    }
  }
  return count;
}

inline std::int64_t brute_tail_neumann(const leaky::LeakyDomain& d,
                                       double lambda) {
  std::int64_t count = brute_tail_dirichlet(d, lambda);
  for (double mu : d.mu)
    for (std::int64_t n = 1;; ++n) {
      if (!(static_cast<double>(n) * static_cast<double>(n) * mu < lambda)) break;
      ++count;
    }
  return count;
}

inline std::int64_t brute_rectangle_count(double mu, double xi, double lambda,
                                          bool include_m0) {
  std::int64_t count = 0;
  for (std::int64_t n = 1;; ++n) {
    const double base = static_cast<double>(n) * static_cast<double>(n) * mu;
    if (!(base < lambda)) break;
    if (include_m0) ++count;
    for (std::int64_t m = 1;; ++m) {
      if (!(base + static_cast<double>(m) * static_cast<double>(m) * xi < lambda))
        break;
      ++count;
    }
  }
  return count;
}

// 40-term power series for J1 in extended precision.
inline double j1_series_ld(double x) {
  const long double q = 0.25L * static_cast<long double>(x) * x;
  long double term = 0.5L * x;
  long double sum = term;
  for (int k = 1; k <= 40; ++k) {
    term *= -q / (static_cast<long double>(k) * (k + 1));
    sum += term;
  }
  return static_cast<double>(sum);
}

// Composite Simpson rule with n panels (n even).
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int n) {
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int k = 1; k < n; ++k) sum += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace oracles
