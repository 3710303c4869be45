#include "leaky/grid_spectrum.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace leaky::grid {

namespace {

constexpr double kGeomTol = 1e-12;

struct Mesh {
  int nx = 0, ny = 0;
  std::vector<int> dof;  // (nx * ny) grid -> dof index or -1
  std::vector<double> xs, ys;
};

Mesh build_mesh(const LeakyDomain& domain, double truncation_x, double h) {
  Mesh mesh;
  const double y_max = std::max(domain.head_height, domain.delta.front());
  mesh.nx = static_cast<int>(std::floor((truncation_x - kGeomTol) / h));
  mesh.ny = static_cast<int>(std::floor((y_max - kGeomTol) / h));
  mesh.dof.assign(static_cast<std::size_t>(mesh.nx) * mesh.ny, -1);
  int next = 0;
  for (int q = 1; q <= mesh.ny; ++q) {
    for (int p = 1; p <= mesh.nx; ++p) {
      const double x = p * h, y = q * h;
      if (y < domain.height_at(x) - kGeomTol) {
        mesh.dof[static_cast<std::size_t>(q - 1) * mesh.nx + (p - 1)] = next++;
        mesh.xs.push_back(x);
        mesh.ys.push_back(y);
      }
    }
  }
  return mesh;
}

Eigen::SparseMatrix<double> assemble(const Mesh& mesh, double h) {
  const auto n = static_cast<Eigen::Index>(mesh.xs.size());
  const double inv_h2 = 1.0 / (h * h);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(5 * static_cast<std::size_t>(n));
  const auto at = [&](int p, int q) -> int {
    if (p < 1 || p > mesh.nx || q < 1 || q > mesh.ny) return -1;
    return mesh.dof[static_cast<std::size_t>(q - 1) * mesh.nx + (p - 1)];
  };
  for (int q = 1; q <= mesh.ny; ++q) {
    for (int p = 1; p <= mesh.nx; ++p) {
      const int row = at(p, q);
      if (row < 0) continue;
      trips.emplace_back(row, row, 4.0 * inv_h2);
      for (const auto& [dp, dq] :
           {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}}) {
        const int col = at(p + dp, q + dq);
        if (col >= 0) trips.emplace_back(row, col, -inv_h2);
      }
    }
  }
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

}  // namespace

GridSpectrum solve(const LeakyDomain& domain, double truncation_x,
                   double mesh_size, int num_eigs, unsigned seed) {
  if (!(mesh_size > 0.0) || num_eigs < 1)
    throw std::invalid_argument("solve: bad mesh size or eigenpair count");
  // the wall must sit at (or before) a step boundary inside the tail
  if (!(truncation_x > domain.head_width) || truncation_x > domain.a.back() + kGeomTol)
    throw std::invalid_argument("solve: truncation_x outside the tail range");
  double thinnest = domain.head_height;
  for (std::size_t k = 0; k < domain.delta.size(); ++k)
    if (domain.rect_left(static_cast<int>(k) + 1) < truncation_x - kGeomTol)
      thinnest = std::min(thinnest, domain.delta[k]);
  if (thinnest / mesh_size < 9.0)
    throw std::invalid_argument(
        "solve: mesh too coarse; need >= 8 interior rows across the thinnest "
        "included rectangle");

  GridSpectrum spec;
  spec.mesh_size = mesh_size;
  spec.truncation_x = truncation_x;

  const Mesh mesh = build_mesh(domain, truncation_x, mesh_size);
  const auto n = static_cast<Eigen::Index>(mesh.xs.size());
  if (n < 4 * num_eigs)
    throw std::invalid_argument("solve: mesh too coarse for requested eigenpairs");
  spec.node_x = mesh.xs;
  spec.node_y = mesh.ys;
  spec.laplacian = assemble(mesh, mesh_size);

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(spec.laplacian);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("solve: factorization of the grid Laplacian failed");

  // Lanczos on A^{-1}: the largest Ritz values map to the lowest modes.
  const Eigen::Index m =
      std::min<Eigen::Index>(n, 3 * static_cast<Eigen::Index>(num_eigs) + 100);
  Eigen::MatrixXd basis(n, m);
  Eigen::VectorXd alpha(m), beta(m);

  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = gauss(rng);
  v.normalize();

  Eigen::Index steps = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    basis.col(j) = v;
    Eigen::VectorXd w = ldlt.solve(v);
    alpha[j] = v.dot(w);
    w -= alpha[j] * v;
    if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
    // full reorthogonalization, twice
    for (int pass = 0; pass < 2; ++pass)
      w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
    beta[j] = w.norm();
    steps = j + 1;
    if (beta[j] < 1e-13) break;  // invariant subspace exhausted
    v = w / beta[j];
  }

  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(steps, steps);
  for (Eigen::Index j = 0; j < steps; ++j) {
    tri(j, j) = alpha[j];
    if (j + 1 < steps) tri(j, j + 1) = tri(j + 1, j) = beta[j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri_eig(tri);
  if (tri_eig.info() != Eigen::Success)
    throw std::runtime_error("solve: tridiagonal eigendecomposition failed");

  // Ritz values descending in theta = 1/lambda; take converged ones.
  struct Pair {
    double lambda;
    Eigen::Index col;
    double resid;
  };
  std::vector<Pair> pairs;
  const double last_beta = beta[steps - 1];
  for (Eigen::Index c = 0; c < steps; ++c) {
    const double theta = tri_eig.eigenvalues()[c];
    if (theta <= 0.0) continue;
    const double resid_theta = std::abs(last_beta * tri_eig.eigenvectors()(steps - 1, c));
    pairs.push_back({1.0 / theta, c, resid_theta / (theta * theta)});
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& a, const Pair& b) { return a.lambda < b.lambda; });
  if (static_cast<int>(pairs.size()) < num_eigs)
    throw std::runtime_error("solve: Lanczos produced too few Ritz pairs");
  for (int k = 0; k < num_eigs; ++k)
    if (pairs[k].resid > 1e-6 * std::max(1.0, pairs[k].lambda))
      throw std::runtime_error(
          "solve: eigensolver did not converge for the requested count");

  spec.eigenvalues.resize(num_eigs);
  spec.eigenvectors.resize(n, num_eigs);
  for (int k = 0; k < num_eigs; ++k) {
    spec.eigenvalues[k] = pairs[k].lambda;
    Eigen::VectorXd x =
        basis.leftCols(steps) * tri_eig.eigenvectors().col(pairs[k].col);
    x /= mesh_size * x.norm();  // h^2-weighted normalization
    spec.eigenvectors.col(k) = x;
  }
  return spec;
}

Eigen::VectorXd GridSpectrum::sample(const LeakyDomain& domain,
                                     const Mollifier& moll,
                                     quasimode::Index idx) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(dofs()));
  for (std::size_t p = 0; p < dofs(); ++p)
    v[static_cast<Eigen::Index>(p)] =
        quasimode::evaluate(domain, moll, idx, node_x[p], node_y[p]);
  return v;
}

double GridSpectrum::tail_mass2(const Eigen::VectorXd& v, double x_cut) const {
  double acc = 0.0;
  for (std::size_t p = 0; p < dofs(); ++p)
    if (node_x[p] > x_cut) acc += v[static_cast<Eigen::Index>(p)] *
                                  v[static_cast<Eigen::Index>(p)];
  return mesh_size * mesh_size * acc;
}

std::pair<double, double> nearest_eigenvalue(const GridSpectrum& spec,
                                             double mu) {
  if (spec.eigenvalues.empty())
    throw std::invalid_argument("nearest_eigenvalue: empty spectrum");
  if (mu > spec.eigenvalues.back())
    throw std::invalid_argument(
        "nearest_eigenvalue: mu beyond the resolved spectral range");
  double best = spec.eigenvalues.front();
  for (double ev : spec.eigenvalues)
    if (std::abs(ev - mu) < std::abs(best - mu)) best = ev;
  return {best, std::abs(best - mu)};
}

RingResult ring_inequality(const GridSpectrum& spec, const LeakyDomain& domain,
                           const Mollifier& moll, quasimode::Index idx,
                           const ClusterWindowConfig& window,
                           double discretization_budget) {
  if (!(window.b > 1.0))
    throw std::invalid_argument("ring_inequality: requires b > 1");
  const double sup_x = domain.rect_right(idx.i);
  if (sup_x > spec.truncation_x + kGeomTol)
    throw std::invalid_argument(
        "ring_inequality: quasimode support crosses the truncation wall");

  RingResult rr;
  rr.mu = quasimode::quasi_eigenvalue(domain, idx);
  const auto rep = quasimode::report(domain, moll, idx);
  rr.eps_grid = rep.discrepancy + discretization_budget;
  rr.bound = 1.0 / (window.b * window.b);

  const Eigen::VectorXd psi = spec.sample(domain, moll, idx);
  const double psi_norm2 = spec.dot(psi, psi);
  const Eigen::VectorXd resid = spec.laplacian * psi - rr.mu * psi;
  rr.discrete_residual = std::sqrt(spec.dot(resid, resid) / psi_norm2);

  const double lo = rr.mu - window.b * rr.eps_grid;
  const double hi = rr.mu + window.b * rr.eps_grid;
  if (hi > spec.eigenvalues.back())
    throw std::invalid_argument(
        "ring_inequality: window exceeds the resolved spectral range");

  double inside = 0.0, captured = 0.0;
  for (std::size_t j = 0; j < spec.eigenvalues.size(); ++j) {
    const double c =
        spec.dot(spec.eigenvectors.col(static_cast<Eigen::Index>(j)), psi);
    captured += c * c;
    if (spec.eigenvalues[j] >= lo && spec.eigenvalues[j] <= hi) {
      inside += c * c;
      ++rr.modes_in_window;
    }
  }
  rr.completeness = captured / psi_norm2;
  if (rr.completeness < 0.99)
    throw std::runtime_error(
        "ring_inequality: computed eigenpairs capture < 99% of the quasimode "
        "(captured fraction " + std::to_string(rr.completeness) + ")");
  rr.outside_mass = (psi_norm2 - inside) / psi_norm2;
  return rr;
}

LeakResult leak_witness(const GridSpectrum& spec, const LeakyDomain& domain,
                        const Mollifier& moll, quasimode::Index idx,
                        const ClusterWindowConfig& window, double x_cut,
                        double discretization_budget) {
  const RingResult rr =
      ring_inequality(spec, domain, moll, idx, window, discretization_budget);
  LeakResult lr;
  lr.eps_grid = rr.eps_grid;
  lr.k = rr.modes_in_window;
  if (lr.k == 0)
    throw std::runtime_error(
        "leak_witness: empty spectral window; solver or budget failure");

  const Eigen::VectorXd psi = spec.sample(domain, moll, idx);
  const double psi_norm2 = spec.dot(psi, psi);
  lr.psi_tail_mass = std::sqrt(spec.tail_mass2(psi, x_cut) / psi_norm2);
  lr.lower_bound =
      (lr.psi_tail_mass - 1.0 / window.b) / std::sqrt(static_cast<double>(lr.k));

  const double lo = rr.mu - window.b * rr.eps_grid;
  const double hi = rr.mu + window.b * rr.eps_grid;
  for (std::size_t j = 0; j < spec.eigenvalues.size(); ++j) {
    if (spec.eigenvalues[j] < lo || spec.eigenvalues[j] > hi) continue;
    const double mass = std::sqrt(spec.tail_mass2(
        spec.eigenvectors.col(static_cast<Eigen::Index>(j)), x_cut));
    lr.phi_tail_mass = std::max(lr.phi_tail_mass, mass);
  }
  return lr;
}

}  // namespace leaky::grid
