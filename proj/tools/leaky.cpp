// leaky: command-line front end for the staircase-domain toolkit.
//
// Subcommands: domain, quasimode, count, poisson, census, verify, specfun.
// CSV outputs carry a versioned "# leaky-csv v1 ..." header comment and are
// byte-reproducible for a fixed configuration on a fixed platform.
//
// Exit codes: 0 success, 2 configuration/parse error, 3 numerical failure,
// 4 truncation-incomplete result under --strict.

#include <CLI11.hpp>

#include <Eigen/Core>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "leaky/counting.hpp"
#include "leaky/domain.hpp"
#include "leaky/grid_spectrum.hpp"
#include "leaky/mollifier.hpp"
#include "leaky/presets.hpp"
#include "leaky/quasimode.hpp"
#include "leaky/specfun.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitTruncation = 4;

struct TruncationIncomplete : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- shared configuration -------------------------------------------------

struct DomainOpts {
  std::string preset = "intro";
  std::string family_json;  // path to a ParameterFamily JSON file
  int truncation = 10;
  double mollifier_eps = 0.1;
  std::optional<double> sigma, rho, beta, gamma, alpha_prime, a1, delta0;
  bool strict = false;
  std::string output;  // empty = stdout
};

void add_domain_opts(CLI::App* cmd, DomainOpts& o, bool with_eps = true) {
  cmd->add_option("--preset", o.preset,
                  "Domain preset: intro | algebraic | logarithmic | unit | tworect");
  cmd->add_option("--family-json", o.family_json,
                  "Path to a ParameterFamily JSON file (overrides --preset)");
  cmd->add_option("-I,--truncation", o.truncation,
                  "Number of instantiated tail rectangles");
  cmd->add_option("--sigma", o.sigma, "intro preset: sigma");
  cmd->add_option("--rho", o.rho, "intro preset: rho");
  cmd->add_option("--beta", o.beta, "algebraic preset: beta");
  cmd->add_option("--gamma", o.gamma, "logarithmic preset: gamma");
  cmd->add_option("--alpha-prime", o.alpha_prime, "tau exponent alpha'");
  cmd->add_option("--a1", o.a1, "Head width a_1");
  cmd->add_option("--delta0", o.delta0, "Head height delta_0 (default 2 delta_1)");
  cmd->add_option("-o,--output", o.output, "Output file (default stdout)");
  cmd->add_flag("--strict", o.strict,
                "Exit 4 when a result is truncation-incomplete");
  if (with_eps)
    cmd->add_option("--mollifier-eps", o.mollifier_eps,
                    "Edge width of the cutoff chi");
}

leaky::ParameterFamily resolve_family(const DomainOpts& o) {
  leaky::ParameterFamily fam;
  if (!o.family_json.empty()) {
    std::ifstream in(o.family_json);
    if (!in) throw std::invalid_argument("cannot open " + o.family_json);
    std::ostringstream buf;
    buf << in.rdbuf();
    fam = leaky::family_from_json(buf.str());
  } else {
    fam = leaky::presets::by_name(o.preset);
  }
  if (o.sigma) fam.sigma = *o.sigma;
  if (o.rho) fam.rho = *o.rho;
  if (o.beta) fam.beta = *o.beta;
  if (o.gamma) fam.gamma = *o.gamma;
  if (o.alpha_prime) fam.alpha_prime = *o.alpha_prime;
  if (o.a1) fam.head.a1 = *o.a1;
  if (o.delta0) fam.head.delta0 = *o.delta0;
  return fam;
}

leaky::LeakyDomain resolve_domain(const DomainOpts& o) {
  return leaky::build_domain(resolve_family(o), o.truncation);
}

// ---- output helpers -------------------------------------------------------

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot write " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_strict(const DomainOpts& o, bool complete) {
  if (o.strict && !complete)
    throw TruncationIncomplete(
        "result depends on rectangles beyond the truncation");
}

leaky::quasimode::Index parse_index(const std::string& text) {
  leaky::quasimode::Index idx;
  if (std::sscanf(text.c_str(), "%d,%d,%d", &idx.i, &idx.m, &idx.n) != 3)
    throw std::invalid_argument("--index expects i,m,n");
  return idx;
}

struct LambdaGridOpts {
  double lambda_min = 100.0;
  double lambda_max = 1e4;
  int points = 50;
  bool geometric = false;
};

void add_grid_opts(CLI::App* cmd, LambdaGridOpts& g) {
  cmd->add_option("--lambda-min", g.lambda_min, "Lower end of the lambda grid");
  cmd->add_option("--lambda-max", g.lambda_max, "Upper end of the lambda grid");
  cmd->add_option("--points", g.points, "Number of grid points");
  cmd->add_flag("--geometric", g.geometric, "Geometric instead of linear grid");
}

// ---- subcommand bodies ----------------------------------------------------

void run_domain_build(const DomainOpts& o) {
  const auto d = resolve_domain(o);
  Sink sink(o.output);
  sink.out() << leaky::domain_to_json(d) << "\n";
}

void run_quasimode_rows(const DomainOpts& o,
                        const std::vector<leaky::quasimode::Index>& indices) {
  const auto d = resolve_domain(o);
  const leaky::Mollifier moll(o.mollifier_eps);
  Sink sink(o.output);
  auto& out = sink.out();
  out << "# leaky-csv v1 quasimode\n";
  out << "i,m,n,mu,norm,residual,discrepancy,disc_over_m_xi\n";
  for (const auto idx : indices) {
    const auto rep = leaky::quasimode::report(d, moll, idx);
    if (!rep.quadrature_converged)
      throw std::runtime_error("quasimode quadrature did not converge");
    out << idx.i << ',' << idx.m << ',' << idx.n << ','
        << fmt(rep.quasi_eigenvalue) << ',' << fmt(rep.norm) << ','
        << fmt(rep.residual_norm) << ',' << fmt(rep.discrepancy) << ','
        << fmt(rep.discrepancy / (idx.m * d.xi[idx.i - 1])) << "\n";
  }
}

void run_count_scan(const DomainOpts& o, const LambdaGridOpts& g) {
  const auto d = resolve_domain(o);
  const auto grid =
      leaky::counting::make_lambda_grid(g.lambda_min, g.lambda_max, g.points,
                                        g.geometric);
  const auto rows = leaky::counting::scan(d, grid);
  Sink sink(o.output);
  auto& out = sink.out();
  out << "# leaky-csv v1 count-scan\n";
  out << "lambda,N_D,N_N,weyl_leading,length_term,bessel_term,remainder,"
         "remainder_over_sqrt_lambda,truncation_flag\n";
  bool all_complete = true;
  for (const auto& row : rows) {
    all_complete = all_complete && row.truncation_complete;
    out << fmt(row.lambda) << ',' << row.n_dirichlet << ',' << row.n_neumann
        << ',' << fmt(row.weyl_leading) << ',' << fmt(row.length_term) << ','
        << fmt(row.bessel_term) << ',' << fmt(row.remainder) << ','
        << fmt(row.remainder / std::sqrt(row.lambda)) << ','
        << (row.truncation_complete ? 1 : 0) << "\n";
  }
  check_strict(o, all_complete);
}

void run_count_cluster(const DomainOpts& o, int i_max, double b) {
  const auto d = resolve_domain(o);
  if (i_max < 1 || i_max > d.truncation)
    throw std::invalid_argument("--i-max outside the instantiated range");
  Sink sink(o.output);
  auto& out = sink.out();
  out << "# leaky-csv v1 count-cluster\n";
  out << "i,mu_center,half_width,count_in_window\n";
  for (int i = 1; i <= i_max; ++i) {
    const double center = d.mu[i - 1] + d.xi[i - 1];
    const double half = b * d.xi[i - 1];
    const double lo = std::max(center - half, 1e-12);  // spectrum is positive
    const auto count =
        leaky::counting::window_count(d, lo, center + half - lo);
    out << i << ',' << fmt(center) << ',' << fmt(half) << ',' << count << "\n";
  }
}

void run_poisson(double ratio, double mu, double tol,
                 const std::string& output) {
  const auto pc = leaky::counting::poisson_check(mu, ratio * mu, tol);
  if (!pc.converged)
    throw std::runtime_error("Bessel series did not meet the tolerance");
  nlohmann::json j;
  j["ratio"] = ratio;
  j["lhs"] = pc.lhs;
  j["rhs"] = pc.rhs;
  j["difference"] = pc.difference;
  j["rhs_error_bound"] = pc.rhs_error_bound;
  Sink sink(output);
  sink.out() << j.dump(2) << "\n";
}

void run_census(const DomainOpts& o, const LambdaGridOpts& g,
                const std::string& kind, const leaky::counting::CensusConfig& cfg) {
  const auto d = resolve_domain(o);
  const auto census_kind = [&] {
    if (kind == "bb") return leaky::counting::CensusKind::bb;
    if (kind == "BB") return leaky::counting::CensusKind::BB;
    throw std::invalid_argument("--kind must be bb or BB");
  }();
  const auto grid =
      leaky::counting::make_lambda_grid(g.lambda_min, g.lambda_max, g.points,
                                        g.geometric);
  Sink sink(o.output);
  auto& out = sink.out();
  out << "# leaky-csv v1 census\n";
  out << "lambda,count,truncation_flag\n";
  bool all_complete = true;
  for (double lambda : grid) {
    const auto tc = leaky::counting::quasimode_census(d, lambda, census_kind, cfg);
    all_complete = all_complete && tc.truncation_complete;
    out << fmt(lambda) << ',' << tc.count << ','
        << (tc.truncation_complete ? 1 : 0) << "\n";
  }
  check_strict(o, all_complete);
}

struct SolveOpts {
  double hx = 1.0 / 64.0;
  int trunc_i = 1;
  int num_eigs = 20;
  unsigned seed = 20240817;
};

void add_solve_opts(CLI::App* cmd, SolveOpts& s) {
  cmd->add_option("--hx", s.hx, "Mesh size h");
  cmd->add_option("--trunc-i", s.trunc_i,
                  "Dirichlet wall at the right edge of rectangle i");
  cmd->add_option("--num-eigs", s.num_eigs, "Number of eigenpairs");
  cmd->add_option("--seed", s.seed, "Lanczos start-vector seed");
}

leaky::grid::GridSpectrum run_solve(const leaky::LeakyDomain& d,
                                    const SolveOpts& s) {
  if (s.trunc_i < 1 || s.trunc_i > d.truncation)
    throw std::invalid_argument("--trunc-i outside the instantiated range");
  return leaky::grid::solve(d, d.rect_right(s.trunc_i), s.hx, s.num_eigs,
                            s.seed);
}

void run_verify_solve(const DomainOpts& o, const SolveOpts& s) {
  const auto d = resolve_domain(o);
  const auto spec = run_solve(d, s);
  nlohmann::json j;
  j["mesh_size"] = spec.mesh_size;
  j["truncation_x"] = spec.truncation_x;
  j["dofs"] = spec.dofs();
  j["eigenvalues"] = spec.eigenvalues;
  Sink sink(o.output);
  sink.out() << j.dump(2) << "\n";
}

void run_verify_ring(const DomainOpts& o, const SolveOpts& s,
                     const std::string& index, double b, double budget) {
  const auto d = resolve_domain(o);
  const leaky::Mollifier moll(o.mollifier_eps);
  const auto spec = run_solve(d, s);
  leaky::grid::ClusterWindowConfig window;
  window.b = b;
  const auto rr = leaky::grid::ring_inequality(spec, d, moll,
                                               parse_index(index), window,
                                               budget);
  nlohmann::json j;
  j["mu"] = rr.mu;
  j["eps_grid"] = rr.eps_grid;
  j["discrete_residual"] = rr.discrete_residual;
  j["completeness"] = rr.completeness;
  j["modes_in_window"] = rr.modes_in_window;
  j["outside_mass"] = rr.outside_mass;
  j["bound"] = rr.bound;
  j["holds"] = rr.outside_mass <=
               rr.bound * (1.0 + (1.0 - rr.completeness)) +
                   (1.0 - rr.completeness);
  Sink sink(o.output);
  sink.out() << j.dump(2) << "\n";
}

void run_verify_leak(const DomainOpts& o, const SolveOpts& s,
                     const std::string& index, double b, double budget,
                     std::optional<double> xcut) {
  const auto d = resolve_domain(o);
  const leaky::Mollifier moll(o.mollifier_eps);
  const auto spec = run_solve(d, s);
  leaky::grid::ClusterWindowConfig window;
  window.b = b;
  const double cut = xcut ? *xcut : d.head_width;  // default x_cut = a_1
  const auto lr = leaky::grid::leak_witness(spec, d, moll, parse_index(index),
                                            window, cut, budget);
  nlohmann::json j;
  j["x_cut"] = cut;
  j["k"] = lr.k;
  j["eps_grid"] = lr.eps_grid;
  j["psi_tail_mass"] = lr.psi_tail_mass;
  j["phi_tail_mass"] = lr.phi_tail_mass;
  j["lower_bound"] = lr.lower_bound;
  j["holds"] = lr.phi_tail_mass >= lr.lower_bound - 0.05;
  Sink sink(o.output);
  sink.out() << j.dump(2) << "\n";
}

nlohmann::json error_json(const std::string& message, int code) {
  return nlohmann::json{{"error", message}, {"exit_code", code}};
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("LEAKY_THREADS"))
    Eigen::setNbThreads(std::max(1, std::atoi(threads)));

  CLI::App app{"Staircase billiard domains, bouncing-ball quasimodes, and "
               "spectral counting"};
  app.require_subcommand(1);

  // domain build
  auto* domain_cmd = app.add_subcommand("domain", "Domain construction");
  domain_cmd->require_subcommand(1);
  DomainOpts build_opts;
  auto* build_cmd =
      domain_cmd->add_subcommand("build", "Build a domain, emit JSON");
  add_domain_opts(build_cmd, build_opts, /*with_eps=*/false);

  // quasimode report | scan
  auto* qm_cmd = app.add_subcommand("quasimode", "Quasimode reports");
  qm_cmd->require_subcommand(1);
  DomainOpts qm_opts;
  std::string qm_index = "1,1,1";
  auto* qm_report = qm_cmd->add_subcommand("report", "Single-index report");
  add_domain_opts(qm_report, qm_opts);
  qm_report->add_option("--index", qm_index, "Quasimode index i,m,n");
  int qm_imax = 5, qm_mmax = 4, qm_nmax = 3;
  auto* qm_scan = qm_cmd->add_subcommand("scan", "Grid of indices as CSV");
  add_domain_opts(qm_scan, qm_opts);
  qm_scan->add_option("--i-max", qm_imax, "Largest rectangle index");
  qm_scan->add_option("--m-max", qm_mmax, "Largest longitudinal mode");
  qm_scan->add_option("--n-max", qm_nmax, "Largest transverse mode");

  // count scan | cluster
  auto* count_cmd = app.add_subcommand("count", "Exact counting vs Weyl");
  count_cmd->require_subcommand(1);
  DomainOpts count_opts;
  LambdaGridOpts count_grid;
  auto* count_scan = count_cmd->add_subcommand("scan", "Counting scan as CSV");
  add_domain_opts(count_scan, count_opts, /*with_eps=*/false);
  add_grid_opts(count_scan, count_grid);
  int cluster_imax = 10;
  double cluster_b = 2.0;
  auto* count_cluster =
      count_cmd->add_subcommand("cluster", "Per-window cluster counts");
  add_domain_opts(count_cluster, count_opts, /*with_eps=*/false);
  count_cluster->add_option("--i-max", cluster_imax, "Largest rectangle index");
  count_cluster->add_option("--b", cluster_b, "Window half-width multiplier");

  // poisson
  double poisson_ratio = 2.0, poisson_mu = M_PI * M_PI, poisson_tol = 1e-8;
  std::string poisson_output;
  auto* poisson_cmd =
      app.add_subcommand("poisson", "Poisson summation identity check");
  poisson_cmd->add_option("--ratio", poisson_ratio, "lambda / mu_i");
  poisson_cmd->add_option("--mu", poisson_mu, "mu_i (default pi^2)");
  poisson_cmd->add_option("--tol", poisson_tol, "Series tolerance");
  poisson_cmd->add_option("-o,--output", poisson_output,
                          "Output file (default stdout)");

  // census
  auto* census_cmd =
      app.add_subcommand("census", "Restricted quasimode counts");
  DomainOpts census_opts;
  LambdaGridOpts census_grid;
  std::string census_kind = "BB";
  leaky::counting::CensusConfig census_cfg;
  add_domain_opts(census_cmd, census_opts, /*with_eps=*/false);
  add_grid_opts(census_cmd, census_grid);
  census_cmd->add_option("--kind", census_kind, "bb or BB");
  census_cmd->add_option("--m-cap", census_cfg.m_cap, "bb: largest m");
  census_cmd->add_option("--n-cap", census_cfg.n_cap, "bb: largest n");
  census_cmd->add_option("--c1", census_cfg.c1, "BB: threshold m xi_i <= C1");

  // verify solve | ring | leak
  auto* verify_cmd =
      app.add_subcommand("verify", "Finite-difference eigensolver checks");
  verify_cmd->require_subcommand(1);
  DomainOpts verify_opts;
  verify_opts.preset = "tworect";
  verify_opts.truncation = 2;
  SolveOpts solve_opts;
  std::string verify_index = "1,1,1";
  double verify_b = 2.0, verify_budget = 1.0;
  std::optional<double> verify_xcut;
  auto* verify_solve =
      verify_cmd->add_subcommand("solve", "Solve and list eigenvalues");
  add_domain_opts(verify_solve, verify_opts, /*with_eps=*/false);
  add_solve_opts(verify_solve, solve_opts);
  auto* verify_ring =
      verify_cmd->add_subcommand("ring", "Spectral-window ring inequality");
  add_domain_opts(verify_ring, verify_opts);
  add_solve_opts(verify_ring, solve_opts);
  verify_ring->add_option("--index", verify_index, "Quasimode index i,m,n");
  verify_ring->add_option("--b", verify_b, "Window half-width multiplier");
  verify_ring->add_option("--budget", verify_budget,
                          "Discretization budget added to the discrepancy");
  auto* verify_leak =
      verify_cmd->add_subcommand("leak", "Mass-leak witness beyond x_cut");
  add_domain_opts(verify_leak, verify_opts);
  add_solve_opts(verify_leak, solve_opts);
  verify_leak->add_option("--index", verify_index, "Quasimode index i,m,n");
  verify_leak->add_option("--b", verify_b, "Window half-width multiplier");
  verify_leak->add_option("--budget", verify_budget,
                          "Discretization budget added to the discrepancy");
  verify_leak->add_option("--xcut", verify_xcut,
                          "Mass cutoff abscissa (default a_1)");

  // specfun j1
  auto* specfun_cmd = app.add_subcommand("specfun", "Special functions");
  specfun_cmd->require_subcommand(1);
  double j1_x = 0.0;
  auto* j1_cmd = specfun_cmd->add_subcommand("j1", "Bessel J1");
  j1_cmd->add_option("x", j1_x, "Argument")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json(e.what(), kExitConfig).dump() << "\n";
    return kExitConfig;
  }

  try {
    if (build_cmd->parsed()) {
      run_domain_build(build_opts);
    } else if (qm_report->parsed()) {
      run_quasimode_rows(qm_opts, {parse_index(qm_index)});
    } else if (qm_scan->parsed()) {
      std::vector<leaky::quasimode::Index> indices;
      for (int i = 1; i <= qm_imax; ++i)
        for (int m = 1; m <= qm_mmax; ++m)
          for (int n = 1; n <= qm_nmax; ++n) indices.push_back({i, m, n});
      run_quasimode_rows(qm_opts, indices);
    } else if (count_scan->parsed()) {
      run_count_scan(count_opts, count_grid);
    } else if (count_cluster->parsed()) {
      run_count_cluster(count_opts, cluster_imax, cluster_b);
    } else if (poisson_cmd->parsed()) {
      run_poisson(poisson_ratio, poisson_mu, poisson_tol, poisson_output);
    } else if (census_cmd->parsed()) {
      run_census(census_opts, census_grid, census_kind, census_cfg);
    } else if (verify_solve->parsed()) {
      run_verify_solve(verify_opts, solve_opts);
    } else if (verify_ring->parsed()) {
      run_verify_ring(verify_opts, solve_opts, verify_index, verify_b,
                      verify_budget);
    } else if (verify_leak->parsed()) {
      run_verify_leak(verify_opts, solve_opts, verify_index, verify_b,
                      verify_budget, verify_xcut);
    } else if (j1_cmd->parsed()) {
      std::cout << fmt(leaky::specfun::bessel_j1(j1_x)) << "\n";
    }
  } catch (const TruncationIncomplete& e) {
    std::cerr << error_json(e.what(), kExitTruncation).dump() << "\n";
    return kExitTruncation;
  } catch (const std::invalid_argument& e) {
    std::cerr << error_json(e.what(), kExitConfig).dump() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << error_json(e.what(), kExitNumerical).dump() << "\n";
    return kExitNumerical;
  }
  return 0;
}
