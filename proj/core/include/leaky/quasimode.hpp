#pragma once

#include "leaky/domain.hpp"
#include "leaky/mollifier.hpp"

namespace leaky::quasimode {

/// (rectangle, longitudinal mode, transverse mode); all 1-based.
struct Index {
  int i = 1;
  int m = 1;
  int n = 1;
};

struct Report {
  Index index;
  double quasi_eigenvalue = 0.0;  // n^2 mu_i + m^2 xi_i
  double norm = 0.0;              // L2 over the domain
  double residual_norm = 0.0;     // ||(Lap + mu) psi||
  double discrepancy = 0.0;       // residual_norm / norm
  double support_x0 = 0.0, support_x1 = 0.0, support_height = 0.0;
  double norm_rel_error = 0.0;      // quadrature error estimates (relative)
  double residual_rel_error = 0.0;
  bool quadrature_converged = true;
};

double quasi_eigenvalue(const LeakyDomain& domain, Index idx);

/// psi(x,y) = chi((x-a_i)/l_i) sin(pi m (x-a_i)/l_i) sin(pi n y / delta_i),
/// zero outside the support rectangle.
double evaluate(const LeakyDomain& domain, const Mollifier& moll, Index idx,
                double x, double y);

/// Closed form of (Lap + mu_{i,m,n}) psi; vanishes on the chi-plateau.
double residual(const LeakyDomain& domain, const Mollifier& moll, Index idx,
                double x, double y);

Report report(const LeakyDomain& domain, const Mollifier& moll, Index idx,
              double quadrature_tol = 1e-10);

/// <psi_A, psi_B>; exactly zero (no quadrature) across rectangles or
/// transverse modes, edge-interval quadrature otherwise.
double overlap(const LeakyDomain& domain, const Mollifier& moll, Index a,
               Index b, double quadrature_tol = 1e-10);

/// ||psi||_{x > x_cut} / ||psi||.
double tail_mass(const LeakyDomain& domain, const Mollifier& moll, Index idx,
                 double x_cut, double quadrature_tol = 1e-10);

void check_index(const LeakyDomain& domain, Index idx);

}  // namespace leaky::quasimode
