#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "helix/friedrichs_check.hpp"
#include "helix/mms_oracle.hpp"
#include "helix/solver.hpp"

namespace {

using namespace helix;

const DomainParams kDomain{1.0, 0.2, 2.0};

const CertifiedSystem& canonical() {
  static const CertifiedSystem sys =
      CertifiedSystem::certify_auto(kDomain, sommerfeld_spec(kDomain, SommerfeldSign::Plus));
  return sys;
}

std::vector<double> pair_source(const Grid& g) {
  return sample_on_grid(g, gaussian_source(opposite_charge_pair(1.0, 1.0, 0.5)));
}

void BM_ChooseParameters(benchmark::State& state) {
  const BoundarySpec spec = sommerfeld_spec(kDomain, SommerfeldSign::Plus);
  for (auto _ : state) benchmark::DoNotOptimize(choose_parameters(kDomain, spec));
}
BENCHMARK(BM_ChooseParameters)->Unit(benchmark::kMillisecond);

void BM_ModeBvp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> r(n + 1);
  std::vector<std::complex<double>> f(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    r[i] = kDomain.epsilon + (kDomain.big_r - kDomain.epsilon) * double(i) / double(n);
    f[i] = {std::exp(-r[i]), std::sin(2 * r[i])};
  }
  for (auto _ : state) benchmark::DoNotOptimize(solve_mode_bvp(kDomain, 1.0, 0.5, 3, r, f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ModeBvp)->RangeMultiplier(4)->Range(64, 16384)->Complexity(benchmark::oN);

void BM_SolveModes(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = build_grid(kDomain, n + 1, n);
  const auto f = pair_source(g);
  for (auto _ : state) benchmark::DoNotOptimize(solve_modes(kDomain, canonical().boundary(), g, f));
}
BENCHMARK(BM_SolveModes)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

void BM_SolveFosls(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = build_grid(kDomain, n + 1, n);
  const auto f = pair_source(g);
  for (auto _ : state) benchmark::DoNotOptimize(solve_fosls(canonical(), g, f));
}
BENCHMARK(BM_SolveFosls)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  OracleOptions opts;
  opts.fine_intervals = static_cast<int>(state.range(0));
  const auto f = [](double r) { return std::complex<double>(std::exp(-r), std::sin(2 * r)); };
  for (auto _ : state) benchmark::DoNotOptimize(oracle_mode_solve(kDomain, 1.0, 0.5, f, 2, 0.0, 0.0, opts));
}
BENCHMARK(BM_Oracle)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
