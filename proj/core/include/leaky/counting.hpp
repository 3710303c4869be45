#pragma once

#include <cstdint>
#include <vector>

#include "leaky/domain.hpp"

namespace leaky::counting {

/// Exact count with a per-call completeness marker: counts with
/// mu_I < lambda may miss rectangles beyond the truncation.
struct TailCount {
  std::int64_t count = 0;
  bool truncation_complete = true;
};

enum class HeadBoundary { dirichlet, neumann_sides };

/// #{(m,n,i) : n^2 mu_i + m^2 xi_i < lambda}, strict inequality.
TailCount count_tail_dirichlet(const LeakyDomain& domain, double lambda);

/// Dirichlet count plus #{(n,i) : n^2 mu_i < lambda}.
TailCount count_tail_neumann(const LeakyDomain& domain, double lambda);

/// Exact lattice count for the rectangular head.  neumann_sides relaxes
/// the vertical walls, adding the m = 0 transverse modes.
std::int64_t head_count(const LeakyDomain& domain, double lambda,
                        HeadBoundary boundary);

/// r-series truncation policy for the Bessel correction term.
struct WeylPolicy {
  double per_term_tol = 1e-8;  // target absolute error per i-term
  std::int64_t r_max = 20000;
};

struct WeylBreakdown {
  double leading = 0.0;        // Area/(4 pi) lambda
  double length_term = 0.0;    // -L(lambda)/(4 pi) sqrt(lambda)
  double bessel_term = 0.0;
  double effective_length = 0.0;  // L(lambda)
  double total = 0.0;
  double series_error_bound = 0.0;  // a-posteriori bound on bessel_term
  bool series_converged = true;     // per_term_tol reached within r_max
};

WeylBreakdown weyl_estimate(const LeakyDomain& domain, double lambda,
                            const WeylPolicy& policy = {});

struct PoissonCheck {
  double lhs = 0.0;  // sum over all integers n of F(n sqrt(mu/lambda))
  double rhs = 0.0;  // (pi/2) sqrt(lambda/mu) + Bessel series
  double difference = 0.0;
  double rhs_error_bound = 0.0;
  bool converged = true;
};

/// Certifies eq-level agreement of the profile sum with its Bessel-series
/// transform at ratio lambda/mu_i.
PoissonCheck poisson_check(double mu_i, double lambda, double tol);

enum class CensusKind { bb, BB };

struct CensusConfig {
  int m_cap = 1;      // bb: m <= m_cap
  int n_cap = 1;      // bb: n <= n_cap
  double c1 = 2000.0;  // BB: m xi_i <= c1
};

TailCount quasimode_census(const LeakyDomain& domain, double lambda,
                           CensusKind kind, const CensusConfig& cfg = {});

/// Eigenvalue count in [lambda, lambda + sigma_window), head included.
std::int64_t window_count(const LeakyDomain& domain, double lambda,
                          double sigma_window);

struct ScanRow {
  double lambda = 0.0;
  std::int64_t n_dirichlet = 0;  // head + tail
  std::int64_t n_neumann = 0;
  double weyl_leading = 0.0;
  double length_term = 0.0;
  double bessel_term = 0.0;
  double remainder = 0.0;  // n_dirichlet - weyl total
  bool truncation_complete = true;
};

std::vector<ScanRow> scan(const LeakyDomain& domain,
                          const std::vector<double>& lambda_grid,
                          const WeylPolicy& policy = {});

/// Geometric or linear lambda grid helper.
std::vector<double> make_lambda_grid(double lo, double hi, int points,
                                     bool geometric);

}  // namespace leaky::counting
