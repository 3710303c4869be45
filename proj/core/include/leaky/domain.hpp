#pragma once

#include <string>
#include <vector>

namespace leaky {

enum class FamilyKind { algebraic, logarithmic, intro_powerlaw, explicit_list };

std::string to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& s);

struct HeadSpec {
  double a1 = 1.0;
  double delta0 = 0.0;  // 0 means "use 2 * delta_1"
};

/// Parameters (h, tau, preset exponents) defining a staircase family.
///
/// algebraic:      h(x) = x^beta (beta < 1/2),   tau(x) = x^{-alpha'}
/// logarithmic:    h(x) = sqrt(x)/log^gamma(1+x), tau(x) = log^{-alpha'} x
/// intro_powerlaw: delta_i = i^{-(1+sigma)}, ell_i = i^rho, sigma > rho > 0
/// explicit_list:  mu_list given; lengths from ell_list, or from
///                 tau/h with the algebraic forms (alpha' = beta = 0 allowed)
struct ParameterFamily {
  FamilyKind kind = FamilyKind::algebraic;
  double beta = 0.0;
  double gamma = 0.0;
  double alpha_prime = 0.0;
  double sigma = 0.0;
  double rho = 0.0;
  std::vector<double> mu_list;
  std::vector<double> ell_list;
  HeadSpec head;

  double h_of(double x) const;
  double tau_of(double x) const;
  void validate() const;
};

/// The instantiated staircase: a rectangular head (0,a_1)x(0,delta_0)
/// followed by `truncation` tail rectangles [a_i, a_{i+1}] x (0, delta_i).
/// Immutable after construction.
struct LeakyDomain {
  double head_width = 1.0;   // a_1
  double head_height = 0.0;  // delta_0
  int truncation = 0;        // I
  std::vector<double> delta;  // heights, size I
  std::vector<double> ell;    // lengths, size I
  std::vector<double> a;      // boundaries a_1 .. a_{I+1}, size I+1
  std::vector<double> mu;     // pi^2 / delta_i^2
  std::vector<double> xi;     // pi^2 / ell_i^2
  double tail_area = 0.0;
  double total_area = 0.0;

  /// Left edge of tail rectangle i (1-based).
  double rect_left(int i) const { return a[i - 1]; }
  double rect_right(int i) const { return a[i]; }
  /// Height f(x); 0 beyond the truncation.
  double height_at(double x) const;
};

/// Realize the first `truncation` rectangles of the family:
/// delta_i = pi mu_i^{-1/2}, area A_i = tau(mu_i)/h(mu_i), ell_i = A_i/delta_i
/// (or the preset's direct delta/ell sequences).
LeakyDomain build_domain(const ParameterFamily& family, int truncation);

/// C = pi^2 sum_i (mu_i xi_i)^{-1/2}; identically the tail area.
double area_constant(const LeakyDomain& domain);

std::string domain_to_json(const LeakyDomain& domain);
std::string family_to_json(const ParameterFamily& family);
ParameterFamily family_from_json(const std::string& text);

}  // namespace leaky
