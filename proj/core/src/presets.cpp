#include "leaky/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace leaky::presets {

ParameterFamily intro(double sigma, double rho) {
  ParameterFamily f;
  f.kind = FamilyKind::intro_powerlaw;
  f.sigma = sigma;
  f.rho = rho;
  return f;
}

ParameterFamily algebraic(double beta, double alpha_prime) {
  ParameterFamily f;
  f.kind = FamilyKind::algebraic;
  f.beta = beta;
  f.alpha_prime = alpha_prime;
  return f;
}

ParameterFamily logarithmic(double gamma, double alpha_prime) {
  ParameterFamily f;
  f.kind = FamilyKind::logarithmic;
  f.gamma = gamma;
  f.alpha_prime = alpha_prime;
  return f;
}

ParameterFamily unit_rectangle() {
  ParameterFamily f;
  f.kind = FamilyKind::explicit_list;
  f.mu_list = {M_PI * M_PI};
  f.ell_list = {1.0};
  return f;
}

ParameterFamily two_rectangle() {
  ParameterFamily f;
  f.kind = FamilyKind::explicit_list;
  // delta = (1/2, 1/4) => mu = (4 pi^2, 16 pi^2); head 1 x 1
  f.mu_list = {4.0 * M_PI * M_PI, 16.0 * M_PI * M_PI};
  f.ell_list = {1.0, 1.5};
  f.head.a1 = 1.0;
  f.head.delta0 = 1.0;
  return f;
}

ParameterFamily by_name(const std::string& name) {
  if (name == "intro") return intro();
  if (name == "algebraic") return algebraic();
  if (name == "logarithmic") return logarithmic();
  if (name == "unit") return unit_rectangle();
  if (name == "tworect") return two_rectangle();
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace leaky::presets
