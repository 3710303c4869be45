#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "leaky/domain.hpp"
#include "leaky/mollifier.hpp"
#include "leaky/quasimode.hpp"

namespace leaky::grid {

/// Lowest eigenpairs of the 5-point Dirichlet Laplacian on the staircase,
/// truncated by a Dirichlet wall at x = truncation_x.  Eigenvectors are
/// L2-normalized with weight h^2.  Immutable after solve().
struct GridSpectrum {
  double mesh_size = 0.0;
  double truncation_x = 0.0;
  std::vector<double> eigenvalues;
  Eigen::MatrixXd eigenvectors;  // one column per eigenpair
  std::vector<double> node_x, node_y;
  Eigen::SparseMatrix<double> laplacian;  // the assembled -Lap_h

  std::size_t dofs() const { return node_x.size(); }

  /// h^2-weighted inner product of grid vectors.
  double dot(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    return mesh_size * mesh_size * u.dot(v);
  }

  /// Sample a continuum function at the grid nodes.
  Eigen::VectorXd sample(const LeakyDomain& domain, const Mollifier& moll,
                         quasimode::Index idx) const;

  /// h^2-weighted squared mass of v over nodes with x > x_cut.
  double tail_mass2(const Eigen::VectorXd& v, double x_cut) const;
};

/// Assemble and solve; shift-invert Lanczos with full
/// reorthogonalization, deterministic given the seed.
GridSpectrum solve(const LeakyDomain& domain, double truncation_x,
                   double mesh_size, int num_eigs, unsigned seed = 20240817);

/// Closest numerical eigenvalue to mu and its distance.
std::pair<double, double> nearest_eigenvalue(const GridSpectrum& spec,
                                             double mu);

struct ClusterWindowConfig {
  double b = 2.0;   // window half-width multiplier, b > 1
  int k_max = 4;    // declared clustering cap (reported against)
};

struct RingResult {
  double outside_mass = 0.0;      // fraction of ||psi||^2 outside J
  double bound = 0.0;             // b^{-2}
  double eps_grid = 0.0;          // discrepancy + budget
  double discrete_residual = 0.0; // ||(A - mu) psi_h|| / ||psi_h||
  double completeness = 0.0;      // captured fraction over computed pairs
  double mu = 0.0;
  int modes_in_window = 0;
};

/// Expands the sampled quasimode in the numerical eigenbasis and
/// measures the spectral mass outside J = [mu - b eps, mu + b eps].
RingResult ring_inequality(const GridSpectrum& spec, const LeakyDomain& domain,
                           const Mollifier& moll, quasimode::Index idx,
                           const ClusterWindowConfig& window,
                           double discretization_budget);

struct LeakResult {
  double phi_tail_mass = 0.0;  // max over window eigenvectors, x > x_cut
  double lower_bound = 0.0;    // (1/sqrt k)(psi tail mass - 1/b)
  double psi_tail_mass = 0.0;
  int k = 0;                   // eigenvalues found in the window
  double eps_grid = 0.0;
};

LeakResult leak_witness(const GridSpectrum& spec, const LeakyDomain& domain,
                        const Mollifier& moll, quasimode::Index idx,
                        const ClusterWindowConfig& window, double x_cut,
                        double discretization_budget);

}  // namespace leaky::grid
