#include "leaky/counting.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "leaky/specfun.hpp"

namespace leaky::counting {

namespace {

constexpr double kPi = M_PI;
constexpr double kTwoPi = 2.0 * M_PI;

// Largest m >= 0 with base + m^2 q < lambda, using the canonical
// predicate so that exact-equality lattice points are excluded
// identically to a brute-force loop.
std::int64_t axis_count(double base, double q, double lambda) {
  const auto inside = [&](std::int64_t m) {
    return base + static_cast<double>(m) * static_cast<double>(m) * q < lambda;
  };
  if (!inside(1)) return 0;
  auto m = static_cast<std::int64_t>(
      std::sqrt(std::max(0.0, (lambda - base) / q)));
  if (m < 1) m = 1;
  while (m >= 1 && !inside(m)) --m;
  while (inside(m + 1)) ++m;
  return m;
}

// ---- Sum_{r>=1} J1(r s)/r, accelerated past a direct prefix ----------
//
// Tail terms follow the Hankel form
//   J1(rs)/r = Re[ sqrt(2/(pi s)) e^{-3 pi i/4} r^{-3/2}
//                  (sum_k i^k a_k (rs)^{-k}) z^r ],  z = e^{is},
// so the tail reduces to truncated periodic zeta values
//   L(z, p, R) = sum_{r > R} z^r r^{-p},
// evaluated through the absolutely convergent Gamma-integral
//   L = z^{R+1} / (Gamma(p) (R+1)^p)
//       int_0^inf u^{p-1} e^{-u} / (1 - z e^{-u/(R+1)}) du,
// which is stable for every phase (no geometric amplification, no
// cancellation).  At exact resonance (z = 1) the integral degenerates to
// the real zeta tail, handled by Euler-Maclaurin.  Direct truncation
// alone cannot meet useful tolerances: the absolute bound only decays
// like 1/sqrt(R).

struct SeriesResult {
  double value = 0.0;
  double error_bound = 0.0;
  bool converged = true;
};

constexpr int kAmpOrders = 7;

// Euler-Maclaurin tail of sum_{r > R} r^{-s}.
double zeta_tail(double s, double R) {
  const double m = R + 1.0;
  double v = std::pow(m, 1.0 - s) / (s - 1.0);
  v += 0.5 * std::pow(m, -s);
  v += s * std::pow(m, -s - 1.0) / 12.0;
  v -= s * (s + 1.0) * (s + 2.0) * std::pow(m, -s - 3.0) / 720.0;
  v += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) *
       std::pow(m, -s - 5.0) / 30240.0;
  return v;
}

// L(z, p, R) = sum_{r > R} z^r r^{-p}, z = e^{i phi}, via the scaled
// Gamma-integral; err_out receives an absolute error estimate on L.
std::complex<double> lerch_tail(double phi, double p, double R,
                                double abs_tol, double& err_out) {
  const double M = R + 1.0;
  const std::complex<double> z_pow_M =
      std::polar(1.0, std::remainder(phi * M, kTwoPi));
  const double scale = 1.0 / (std::tgamma(p) * std::pow(M, p));
  const double cphi = std::cos(phi), sphi = std::sin(phi);
  const double one_minus_cos = 2.0 * std::pow(std::sin(0.5 * phi), 2);
  // 1 - z e^{-u/M}, written without cancellation near u = 0, phi = 0
  const auto denom = [&](double u) {
    const double em = std::expm1(-u / M);
    return std::complex<double>(one_minus_cos - cphi * em,
                                -(1.0 + em) * sphi);
  };
  const auto weight = [&](double u) {
    return std::pow(u, p - 1.0) * std::exp(-u);
  };
  specfun::QuadratureSpec spec;
  spec.rel_tol = 1e-13;
  spec.abs_tol = std::max(abs_tol / (8.0 * std::max(scale, 1e-280)), 1e-280);
  spec.max_depth = 48;
  const double splits[] = {0.0, 0.5, 4.0, 16.0, 80.0};
  double re = 0.0, im = 0.0, qerr = 0.0;
  for (int seg = 0; seg + 1 < 4 + 1; ++seg) {
    const auto pr = specfun::integrate(
        [&](double u) { return weight(u) * (1.0 / denom(u)).real(); },
        splits[seg], splits[seg + 1], spec);
    const auto pi = specfun::integrate(
        [&](double u) { return weight(u) * (1.0 / denom(u)).imag(); },
        splits[seg], splits[seg + 1], spec);
    re += pr.value;
    im += pi.value;
    qerr += pr.error_estimate + pi.error_estimate;
  }
  // cut beyond u = 80; |denom| >= 0.7 |1 - z| for all u
  const double gap = 2.0 * std::abs(std::sin(0.5 * phi));
  const double denom_min = std::max(0.7 * gap, 1e-280);
  qerr += 2.0 * weight(splits[4]) / denom_min;
  err_out = scale * qerr;
  return z_pow_M * std::complex<double>(re, im) * scale;
}

SeriesResult j1_over_r_series(double s, double tol, std::int64_t r_max) {
  SeriesResult out;
  const double phi = std::remainder(s, kTwoPi);
  const double gap = 2.0 * std::abs(std::sin(0.5 * phi));
  const double amp0 = std::sqrt(2.0 / (kPi * s));
  const double a_cut = std::abs(specfun::j1_hankel_coeff(kAmpOrders));

  // direct prefix: far enough out that the Hankel amplitude holds to
  // kAmpOrders terms within the requested tolerance
  const auto amp_cut = [&](double R) {
    return amp0 * a_cut * std::pow(s, -kAmpOrders) *
           zeta_tail(1.5 + kAmpOrders, R);
  };
  std::int64_t r0 = std::max<std::int64_t>(
      64, static_cast<std::int64_t>(std::ceil(30.0 / s)));
  while (r0 < r_max && amp_cut(static_cast<double>(r0)) > 0.05 * tol) r0 *= 2;
  if (r0 > r_max) r0 = r_max;

  for (std::int64_t r = 1; r <= r0; ++r)
    out.value += specfun::bessel_j1(r * s) / static_cast<double>(r);
  out.error_bound = 2e-16 * static_cast<double>(r0);  // direct-part roundoff

  const double R = static_cast<double>(r0);
  const std::complex<double> phase = std::polar(1.0, -0.75 * kPi);
  std::complex<double> sum = 0.0;
  std::complex<double> ik = 1.0;
  if (gap < 1e-12) {
    // at (numerically exact) resonance the periodic factor is constant;
    // the residual z^r drift over the tail is bounded by 4 c sqrt(gap)
    for (int k = 0; k < kAmpOrders; ++k) {
      sum += ik * specfun::j1_hankel_coeff(k) * std::pow(s, -k) *
             zeta_tail(1.5 + k, R);
      ik *= std::complex<double>(0.0, 1.0);
    }
    out.error_bound += 4.0 * amp0 * std::sqrt(std::max(gap, 1e-300));
  } else {
    for (int k = 0; k < kAmpOrders; ++k) {
      const double pref =
          amp0 * std::abs(specfun::j1_hankel_coeff(k)) * std::pow(s, -k);
      double lerr = 0.0;
      const auto L =
          lerch_tail(phi, 1.5 + k, R,
                     tol / (2.0 * kAmpOrders * std::max(pref, 1e-280)), lerr);
      sum += ik * specfun::j1_hankel_coeff(k) * std::pow(s, -k) * L;
      out.error_bound += pref * lerr;
      ik *= std::complex<double>(0.0, 1.0);
    }
  }
  out.value += (amp0 * phase * sum).real();
  out.error_bound += amp_cut(R);
  out.converged = out.error_bound <= tol;
  return out;
}

}  // namespace

TailCount count_tail_dirichlet(const LeakyDomain& domain, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  TailCount tc;
  tc.truncation_complete = !(domain.mu.back() < lambda);
  for (std::size_t k = 0; k < domain.mu.size(); ++k) {
    const double mu = domain.mu[k], xi = domain.xi[k];
    if (!(mu < lambda)) break;
    for (std::int64_t n = 1;; ++n) {
      const double base = static_cast<double>(n) * static_cast<double>(n) * mu;
      if (!(base < lambda)) break;
      tc.count += axis_count(base, xi, lambda);
    }
  }
  return tc;
}

TailCount count_tail_neumann(const LeakyDomain& domain, double lambda) {
  TailCount tc = count_tail_dirichlet(domain, lambda);
  for (double mu : domain.mu) {
    if (!(mu < lambda)) break;
    tc.count += axis_count(0.0, mu, lambda);
  }
  return tc;
}

std::int64_t head_count(const LeakyDomain& domain, double lambda,
                        HeadBoundary boundary) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const double mu_h = kPi * kPi / (domain.head_height * domain.head_height);
  const double xi_h = kPi * kPi / (domain.head_width * domain.head_width);
  std::int64_t count = 0;
  for (std::int64_t n = 1;; ++n) {
    const double base = static_cast<double>(n) * static_cast<double>(n) * mu_h;
    if (!(base < lambda)) break;
    count += axis_count(base, xi_h, lambda);
    if (boundary == HeadBoundary::neumann_sides) ++count;  // the m = 0 mode
  }
  return count;
}

WeylBreakdown weyl_estimate(const LeakyDomain& domain, double lambda,
                            const WeylPolicy& policy) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const double sqrt_lambda = std::sqrt(lambda);
  WeylBreakdown w;
  w.leading = domain.total_area / (4.0 * kPi) * lambda;

  std::vector<double> lengths;
  std::vector<double> bessel_parts;
  for (std::size_t k = 0; k < domain.mu.size(); ++k) {
    if (!(domain.delta[k] * sqrt_lambda > kPi)) break;
    lengths.push_back(domain.ell[k]);
    const double s = 2.0 * domain.delta[k] * sqrt_lambda;
    const auto series =
        j1_over_r_series(s, policy.per_term_tol * kTwoPi /
                                (sqrt_lambda * domain.ell[k]),
                         policy.r_max);
    bessel_parts.push_back(sqrt_lambda / kTwoPi * domain.ell[k] * series.value);
    w.series_error_bound +=
        sqrt_lambda / kTwoPi * domain.ell[k] * series.error_bound;
    w.series_converged = w.series_converged && series.converged;
  }
  w.effective_length = 2.0 * specfun::pairwise_sum(lengths);
  w.length_term = -w.effective_length / (4.0 * kPi) * sqrt_lambda;
  w.bessel_term = specfun::pairwise_sum(bessel_parts);
  w.total = w.leading + w.length_term + w.bessel_term;
  return w;
}

PoissonCheck poisson_check(double mu_i, double lambda, double tol) {
  if (!(mu_i > 0.0 && lambda > 0.0))
    throw std::invalid_argument("poisson_check: mu and lambda must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("poisson_check: tol must be positive");
  PoissonCheck pc;
  const double ratio = lambda / mu_i;
  const double y = std::sqrt(ratio);

  pc.lhs = 1.0;  // n = 0 term
  for (std::int64_t n = 1; static_cast<double>(n) < y || n * n < ratio; ++n) {
    const double x2 = static_cast<double>(n) * static_cast<double>(n) / ratio;
    if (x2 >= 1.0) break;
    pc.lhs += 2.0 * std::sqrt(1.0 - x2);
  }

  const auto series = j1_over_r_series(kTwoPi * y, tol, 4'000'000);
  pc.rhs = kPi / 2.0 * y + series.value;
  pc.rhs_error_bound = series.error_bound;
  pc.difference = pc.lhs - pc.rhs;
  pc.converged = series.converged;
  return pc;
}

TailCount quasimode_census(const LeakyDomain& domain, double lambda,
                           CensusKind kind, const CensusConfig& cfg) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  TailCount tc;
  tc.truncation_complete = !(domain.mu.back() < lambda);
  for (std::size_t k = 0; k < domain.mu.size(); ++k) {
    const double mu = domain.mu[k], xi = domain.xi[k];
    if (kind == CensusKind::bb) {
      for (int n = 1; n <= cfg.n_cap; ++n) {
        const double base = static_cast<double>(n) * n * mu;
        if (!(base < lambda)) break;
        tc.count += std::min<std::int64_t>(cfg.m_cap, axis_count(base, xi, lambda));
      }
    } else {
      const auto m_allowed = static_cast<std::int64_t>(cfg.c1 / xi);
      for (std::int64_t m = 1; m <= m_allowed; ++m) {
        const double base = static_cast<double>(m) * static_cast<double>(m) * xi;
        if (!(base < lambda)) break;
        tc.count += axis_count(base, mu, lambda);
      }
    }
  }
  return tc;
}

std::int64_t window_count(const LeakyDomain& domain, double lambda,
                          double sigma_window) {
  if (!(sigma_window > 0.0))
    throw std::invalid_argument("sigma_window must be positive");
  const double hi = lambda + sigma_window;
  const std::int64_t upper = head_count(domain, hi, HeadBoundary::dirichlet) +
                             count_tail_dirichlet(domain, hi).count;
  const std::int64_t lower =
      head_count(domain, lambda, HeadBoundary::dirichlet) +
      count_tail_dirichlet(domain, lambda).count;
  return upper - lower;
}

std::vector<ScanRow> scan(const LeakyDomain& domain,
                          const std::vector<double>& lambda_grid,
                          const WeylPolicy& policy) {
  std::vector<ScanRow> rows;
  rows.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) {
    ScanRow row;
    row.lambda = lambda;
    const auto nd = count_tail_dirichlet(domain, lambda);
    const auto nn = count_tail_neumann(domain, lambda);
    row.n_dirichlet =
        nd.count + head_count(domain, lambda, HeadBoundary::dirichlet);
    row.n_neumann =
        nn.count + head_count(domain, lambda, HeadBoundary::neumann_sides);
    const auto w = weyl_estimate(domain, lambda, policy);
    row.weyl_leading = w.leading;
    row.length_term = w.length_term;
    row.bessel_term = w.bessel_term;
    row.remainder = static_cast<double>(row.n_dirichlet) - w.total;
    row.truncation_complete = nd.truncation_complete;
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> make_lambda_grid(double lo, double hi, int points,
                                     bool geometric) {
  if (!(lo > 0.0 && hi > lo) || points < 2)
    throw std::invalid_argument("bad lambda grid parameters");
  std::vector<double> grid(points);
  for (int k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / (points - 1);
    grid[k] = geometric ? lo * std::pow(hi / lo, t) : lo + t * (hi - lo);
  }
  return grid;
}

}  // namespace leaky::counting
