#include <benchmark/benchmark.h>

#include <cmath>

#include "leaky/counting.hpp"
#include "leaky/domain.hpp"
#include "leaky/mollifier.hpp"
#include "leaky/presets.hpp"
#include "leaky/quasimode.hpp"
#include "leaky/specfun.hpp"

namespace {

const leaky::LeakyDomain& intro_domain() {
  static const auto d = leaky::build_domain(leaky::presets::intro(), 20);
  return d;
}

const leaky::LeakyDomain& algebraic_domain() {
  static const auto d = leaky::build_domain(leaky::presets::algebraic(), 20);
  return d;
}

void BM_bessel_j1(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(leaky::specfun::bessel_j1(x));
    x += 0.37;
    if (x > 900.0) x -= 900.0;
  }
}
BENCHMARK(BM_bessel_j1);

void BM_count_tail_dirichlet(benchmark::State& state) {
  const auto& d = intro_domain();
  const double lambda = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(leaky::counting::count_tail_dirichlet(d, lambda));
}
BENCHMARK(BM_count_tail_dirichlet)->Arg(10000)->Arg(1000000)->Arg(100000000);

void BM_weyl_estimate(benchmark::State& state) {
  const auto& d = algebraic_domain();
  const double lambda = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(leaky::counting::weyl_estimate(d, lambda));
}
BENCHMARK(BM_weyl_estimate)->Arg(1000)->Arg(100000)->Arg(1000000);

void BM_poisson_check(benchmark::State& state) {
  const double mu = M_PI * M_PI;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        leaky::counting::poisson_check(mu, 37.5 * mu, 1e-8));
}
BENCHMARK(BM_poisson_check);

void BM_quasimode_report(benchmark::State& state) {
  const auto& d = algebraic_domain();
  const leaky::Mollifier moll(0.1);
  for (auto _ : state)
    benchmark::DoNotOptimize(leaky::quasimode::report(d, moll, {3, 2, 1}));
}
BENCHMARK(BM_quasimode_report);

void BM_scan_row(benchmark::State& state) {
  const auto& d = algebraic_domain();
  const std::vector<double> grid = {12345.6};
  for (auto _ : state)
    benchmark::DoNotOptimize(leaky::counting::scan(d, grid));
}
BENCHMARK(BM_scan_row);

}  // namespace

BENCHMARK_MAIN();
