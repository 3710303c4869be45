#include "leaky/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace leaky {

namespace {
constexpr double kPi = M_PI;
constexpr double kPi2 = M_PI * M_PI;
}  // namespace

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::algebraic: return "algebraic";
    case FamilyKind::logarithmic: return "logarithmic";
    case FamilyKind::intro_powerlaw: return "intro_powerlaw";
    case FamilyKind::explicit_list: return "explicit_list";
  }
  return "unknown";
}

FamilyKind family_kind_from_string(const std::string& s) {
  if (s == "algebraic") return FamilyKind::algebraic;
  if (s == "logarithmic") return FamilyKind::logarithmic;
  if (s == "intro_powerlaw" || s == "intro") return FamilyKind::intro_powerlaw;
  if (s == "explicit_list") return FamilyKind::explicit_list;
  throw std::invalid_argument("unknown family kind: " + s);
}

double ParameterFamily::h_of(double x) const {
  switch (kind) {
    case FamilyKind::logarithmic:
      return std::sqrt(x) / std::pow(std::log1p(x), gamma);
    default:
      return std::pow(x, beta);
  }
}

double ParameterFamily::tau_of(double x) const {
  switch (kind) {
    case FamilyKind::logarithmic:
      return std::pow(std::log(x), -alpha_prime);
    default:
      return std::pow(x, -alpha_prime);
  }
}

void ParameterFamily::validate() const {
  if (head.a1 <= 0.0)
    throw std::invalid_argument("head width a1 must be positive");
  switch (kind) {
    case FamilyKind::algebraic:
      if (beta < 0.0 || beta >= 0.5)
        throw std::invalid_argument("algebraic family requires 0 <= beta < 1/2");
      if (alpha_prime <= 0.0)
        throw std::invalid_argument("algebraic family requires alpha' > 0");
      break;
    case FamilyKind::logarithmic:
      if (gamma <= 0.0)
        throw std::invalid_argument("logarithmic family requires gamma > 0");
      if (alpha_prime <= 0.0)
        throw std::invalid_argument("logarithmic family requires alpha' > 0");
      break;
    case FamilyKind::intro_powerlaw:
      if (!(sigma > rho && rho > 0.0))
        throw std::invalid_argument("intro family requires sigma > rho > 0");
      break;
    case FamilyKind::explicit_list:
      if (mu_list.empty())
        throw std::invalid_argument("explicit_list family requires mu_list");
      if (alpha_prime < 0.0 || beta < 0.0 || beta >= 0.5)
        throw std::invalid_argument("explicit_list: bad tau/h exponents");
      break;
  }
}

double LeakyDomain::height_at(double x) const {
  if (x <= 0.0) return 0.0;
  if (x < head_width) return head_height;
  const auto it = std::upper_bound(a.begin(), a.end(), x);
  const auto idx = static_cast<std::size_t>(it - a.begin());  // x < a[idx]
  if (idx == 0 || idx > delta.size()) return 0.0;
  return delta[idx - 1];
}

namespace {

// mu_i for generated families when no explicit list is given.
double default_mu(FamilyKind kind, int i) {
  if (kind == FamilyKind::logarithmic) return kPi2 * std::exp(i + 2.0);
  return kPi2 * std::pow(static_cast<double>(i), 4.0);
}

void check_h_tau(const ParameterFamily& fam, const std::vector<double>& mu) {
  double prev_h = -1.0, prev_tau = std::numeric_limits<double>::infinity();
  for (double m : mu) {
    const double h = fam.h_of(m);
    const double t = fam.tau_of(m);
    if (!(h >= prev_h))
      throw std::invalid_argument("h must be increasing over the mu range");
    if (h > std::sqrt(m) * (1.0 + 1e-12))
      throw std::invalid_argument("h(x) <= sqrt(x) violated");
    if (!(t > 0.0) || t > prev_tau * (1.0 + 1e-12))
      throw std::invalid_argument("tau must be positive and decreasing");
    prev_h = h;
    prev_tau = t;
  }
}

}  // namespace

LeakyDomain build_domain(const ParameterFamily& family, int truncation) {
  family.validate();
  if (truncation < 1)
    throw std::invalid_argument("truncation must be at least 1");

  LeakyDomain d;
  d.head_width = family.head.a1;

  if (family.kind == FamilyKind::intro_powerlaw) {
    d.truncation = truncation;
    for (int i = 1; i <= truncation; ++i) {
      d.delta.push_back(std::pow(static_cast<double>(i), -(1.0 + family.sigma)));
      d.ell.push_back(std::pow(static_cast<double>(i), family.rho));
    }
  } else {
    std::vector<double> mu = family.mu_list;
    if (mu.empty()) {
      for (int i = 1; i <= truncation; ++i)
        mu.push_back(default_mu(family.kind, i));
    } else {
      // merge ties (right-continuity of f would fuse equal-height steps)
      std::vector<double> merged;
      std::vector<double> merged_ell;
      for (std::size_t k = 0; k < mu.size(); ++k) {
        if (!(mu[k] > 0.0))
          throw std::invalid_argument("mu_list entries must be positive");
        if (!merged.empty() && mu[k] < merged.back())
          throw std::invalid_argument("mu_list must be nondecreasing");
        const double el =
            k < family.ell_list.size() ? family.ell_list[k] : 0.0;
        if (!merged.empty() && mu[k] == merged.back()) {
          if (!family.ell_list.empty()) merged_ell.back() += el;
        } else {
          merged.push_back(mu[k]);
          if (!family.ell_list.empty()) merged_ell.push_back(el);
        }
      }
      mu = std::move(merged);
      if (static_cast<int>(mu.size()) > truncation) mu.resize(truncation);
      if (!family.ell_list.empty()) {
        merged_ell.resize(mu.size());
        d.ell = merged_ell;
      }
    }
    check_h_tau(family, mu);
    d.truncation = static_cast<int>(mu.size());
    for (std::size_t k = 0; k < mu.size(); ++k) {
      const double delta = kPi / std::sqrt(mu[k]);
      d.delta.push_back(delta);
      if (d.ell.size() <= k) {
        const double area = family.tau_of(mu[k]) / family.h_of(mu[k]);
        d.ell.push_back(area / delta);
      }
    }
  }

  for (std::size_t k = 0; k + 1 < d.delta.size(); ++k)
    if (!(d.delta[k + 1] < d.delta[k]))
      throw std::invalid_argument("delta_i must be strictly decreasing");
  for (double l : d.ell)
    if (!(l > 0.0)) throw std::invalid_argument("ell_i must be positive");

  d.a.resize(d.delta.size() + 1);
  d.a[0] = d.head_width;
  d.mu.resize(d.delta.size());
  d.xi.resize(d.delta.size());
  std::vector<double> areas(d.delta.size());
  for (std::size_t k = 0; k < d.delta.size(); ++k) {
    d.a[k + 1] = d.a[k] + d.ell[k];
    d.mu[k] = kPi2 / (d.delta[k] * d.delta[k]);
    d.xi[k] = kPi2 / (d.ell[k] * d.ell[k]);
    areas[k] = d.ell[k] * d.delta[k];
  }
  double tail = 0.0;
  for (double v : areas) tail += v;
  d.tail_area = tail;

  d.head_height =
      family.head.delta0 > 0.0 ? family.head.delta0 : 2.0 * d.delta.front();
  if (d.head_height < d.delta.front())
    throw std::invalid_argument("head height delta_0 must be >= delta_1");
  d.total_area = d.head_width * d.head_height + d.tail_area;
  return d;
}

double area_constant(const LeakyDomain& domain) {
  double c = 0.0;
  for (std::size_t k = 0; k < domain.mu.size(); ++k)
    c += kPi2 / std::sqrt(domain.mu[k] * domain.xi[k]);
  return c;
}

std::string domain_to_json(const LeakyDomain& d) {
  nlohmann::json j;
  j["head"] = {{"a1", d.head_width}, {"delta0", d.head_height}};
  j["truncation"] = d.truncation;
  j["delta"] = d.delta;
  j["ell"] = d.ell;
  j["a"] = d.a;
  j["mu"] = d.mu;
  j["xi"] = d.xi;
  j["tail_area"] = d.tail_area;
  j["total_area"] = d.total_area;
  j["area_constant"] = area_constant(d);
  return j.dump(2);
}

std::string family_to_json(const ParameterFamily& f) {
  nlohmann::json j;
  j["kind"] = to_string(f.kind);
  j["beta"] = f.beta;
  j["gamma"] = f.gamma;
  j["alpha_prime"] = f.alpha_prime;
  j["sigma"] = f.sigma;
  j["rho"] = f.rho;
  if (!f.mu_list.empty()) j["mu_list"] = f.mu_list;
  if (!f.ell_list.empty()) j["ell_list"] = f.ell_list;
  j["head"] = {{"a1", f.head.a1}, {"delta0", f.head.delta0}};
  return j.dump(2);
}

ParameterFamily family_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ParameterFamily f;
  // a domain summary (mu/ell, no kind) round-trips as an explicit list
  f.kind = family_kind_from_string(j.value("kind", "explicit_list"));
  f.beta = j.value("beta", 0.0);
  f.gamma = j.value("gamma", 0.0);
  f.alpha_prime = j.value("alpha_prime", 0.0);
  f.sigma = j.value("sigma", 0.0);
  f.rho = j.value("rho", 0.0);
  if (j.contains("mu_list")) f.mu_list = j["mu_list"].get<std::vector<double>>();
  if (j.contains("ell_list"))
    f.ell_list = j["ell_list"].get<std::vector<double>>();
  if (f.mu_list.empty() && j.contains("mu"))
    f.mu_list = j["mu"].get<std::vector<double>>();
  if (f.ell_list.empty() && j.contains("ell"))
    f.ell_list = j["ell"].get<std::vector<double>>();
  if (j.contains("head")) {
    f.head.a1 = j["head"].value("a1", 1.0);
    f.head.delta0 = j["head"].value("delta0", 0.0);
  }
  return f;
}

}  // namespace leaky
