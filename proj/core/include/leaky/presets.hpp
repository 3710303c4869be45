#pragma once

#include <string>

#include "leaky/domain.hpp"

namespace leaky::presets {

/// delta_i = i^{-(1+sigma)}, ell_i = i^rho.
ParameterFamily intro(double sigma = 1.0, double rho = 0.5);

/// h(x) = x^beta, tau(x) = x^{-alpha'}, mu_i = pi^2 i^4 by default.
ParameterFamily algebraic(double beta = 0.1, double alpha_prime = 0.6);

/// h(x) = sqrt(x)/log^gamma(1+x), tau(x) = log^{-alpha'} x,
/// mu_i = pi^2 e^{i+2} by default.
ParameterFamily logarithmic(double gamma = 2.0, double alpha_prime = 2.0);

/// Single unit rectangle (mu_1 = pi^2, ell_1 = delta_1 = 1).
ParameterFamily unit_rectangle();

/// Grid-aligned two-rectangle staircase used by the eigensolver checks:
/// head 1 x 1, then 1 x 0.5 and 1.5 x 0.25.
ParameterFamily two_rectangle();

/// Lookup by name: intro | algebraic | logarithmic | unit | tworect.
ParameterFamily by_name(const std::string& name);

}  // namespace leaky::presets
