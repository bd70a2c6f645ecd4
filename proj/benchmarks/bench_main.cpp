// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "kgh/hierarchy.hpp"
#include "kgh/oracle.hpp"
#include "kgh/spectra.hpp"
#include "kgh/wavefunctions.hpp"

namespace {

using kgh::Branch;
using kgh::Couplings;
using kgh::PotentialParams;

const PotentialParams kSetC(Couplings{0.3, 0.5, 0.0, 0.25, 0.8, 1.0, Branch::Hermitian});
const PotentialParams kSetCNh(Couplings{0.3, 0.5, 0.1, 0.25, 0.8, 1.0, Branch::NonHermitian});

void BM_SolveLevelHermitian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kgh::solve_level(kSetC, n));
}
BENCHMARK(BM_SolveLevelHermitian)->Arg(0)->Arg(3);

void BM_SolveLevelNonHermitian(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kgh::solve_level(kSetCNh, 0));
}
BENCHMARK(BM_SolveLevelNonHermitian);

void BM_Spectrum(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kgh::spectrum(kSetC, 10));
}
BENCHMARK(BM_Spectrum);

void BM_RiccatiResidual(benchmark::State& state) {
  const auto E = kgh::solve_level(kSetC, 2).back().E;
  const kgh::UniformGrid g(0.05, 150.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kgh::riccati_residual(kSetC, E, 2, g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RiccatiResidual)->Range(1000, 16000)->Complexity(benchmark::oN);

void BM_GroundState(benchmark::State& state) {
  const auto E = kgh::solve_level(kSetC, 0).back().E;
  const auto w = kgh::superpotential(kSetC, kgh::level(kSetC, E, 0));
  const kgh::UniformGrid g(0.05, 150.0, 4000);
  for (auto _ : state) benchmark::DoNotOptimize(kgh::ground_state_from_W(w, g));
}
BENCHMARK(BM_GroundState);

void BM_CountBelow(benchmark::State& state) {
  kgh::oracle::OracleConfig cfg;
  cfg.n_points = static_cast<int>(state.range(0));
  const auto A = kgh::oracle::discretize(kSetC, 0.5, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(A.count_below(-0.1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CountBelow)->Range(1000, 16000)->Complexity(benchmark::oN);

void BM_OracleEigenvalue(benchmark::State& state) {
  kgh::oracle::OracleConfig cfg;
  cfg.fd_order = static_cast<int>(state.range(0));
  const auto A = kgh::oracle::discretize(kSetC, 0.5, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(A.eigenvalue(1));
}
BENCHMARK(BM_OracleEigenvalue)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_OracleLowestEigenvaluesLapack(benchmark::State& state) {
  const auto A = kgh::oracle::discretize(kSetC, 0.5, {});
  for (auto _ : state) benchmark::DoNotOptimize(A.lowest_eigenvalues(2));
}
BENCHMARK(BM_OracleLowestEigenvaluesLapack)->Unit(benchmark::kMillisecond);

void BM_OracleBoundStates(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kgh::oracle::bound_states(kSetC, 0, {}));
}
BENCHMARK(BM_OracleBoundStates)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
