#pragma once

#include <vector>

namespace leaky {

/// Smooth cutoff chi: 0 outside [0,1], 1 on [eps, 1-eps], with the
/// exp(-1/(s(1-s))) edge profile.  The rising edge is
/// S(t) = Phi(t)/Phi(1), Phi(t) = int_0^t exp(-1/(s(1-s))) ds; the edge
/// table is precomputed at construction, after which evaluation is pure
/// and safe to share across threads.
class Mollifier {
 public:
  explicit Mollifier(double eps = 0.1);

  double eps() const { return eps_; }
  /// Phi(1), the normalizing integral of the bump profile.
  double normalizer() const { return phi1_; }

  double chi(double x) const;
  double chi_prime(double x) const;
  double chi_double_prime(double x) const;

  /// Edge profile S and derivatives on [0,1] (S(0)=0, S(1)=1).
  double edge(double t) const;
  double edge_prime(double t) const;
  double edge_double_prime(double t) const;

 private:
  double eps_;
  double phi1_;
  std::vector<double> phi_table_;  // Phi at uniform nodes on [0,1]
};

}  // namespace leaky
