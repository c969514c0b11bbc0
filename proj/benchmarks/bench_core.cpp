// Copyright 2026 The gaussdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>

#include "gaussdisc/bounds.hpp"
#include "gaussdisc/channel_model.hpp"
#include "gaussdisc/montecarlo.hpp"
#include "gaussdisc/multiformat.hpp"
#include "gaussdisc/numerics.hpp"

using namespace gaussdisc;

static void BM_Erfc(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(numerics::erfc(x));
    x = x > 6.0 ? -2.0 : x + 0.013;
  }
}
BENCHMARK(BM_Erfc);

static void BM_StdErfc(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(std::erfc(x));
    x = x > 6.0 ? -2.0 : x + 0.013;
  }
}
BENCHMARK(BM_StdErfc);

static void BM_BoundSet(benchmark::State& state) {
  double n = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bound_set(n));
    n = n > 5.0 ? 0.0 : n + 0.01;
  }
}
BENCHMARK(BM_BoundSet);

static void BM_Crossover(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(crossover_photon_number());
}
BENCHMARK(BM_Crossover);

static void BM_OptimalGammaLossy(benchmark::State& state) {
  ExperimentParams p;
  p.loss = 0.5;
  p.v_th = 1.2;
  for (auto _ : state) benchmark::DoNotOptimize(optimal_gamma_lossy(1.0, p));
}
BENCHMARK(BM_OptimalGammaLossy);

static void BM_Psk3Quadrature(benchmark::State& state) {
  const double gamma = state.range(0) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(psk3_error_quadrature(1.0, gamma));
}
BENCHMARK(BM_Psk3Quadrature)->Arg(0)->Arg(50)->Arg(95);

static void BM_Psk3Phase(benchmark::State& state) {
  const double gamma = state.range(0) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(psk3_error_phase(1.0, gamma));
}
BENCHMARK(BM_Psk3Phase)->Arg(0)->Arg(50)->Arg(95);

static void BM_MonteCarlo(benchmark::State& state) {
  TrialBatch b;
  b.format = static_cast<Alphabet>(state.range(0));
  b.budget = {1.0, 0.2};
  b.params.loss = 0.3;
  b.n_samples = 1 << 18;
  std::uint64_t trials = 0;
  for (auto _ : state) {
    b.seed += 1;
    const auto est = run_batch(b, 1);
    trials += est.trials;
    benchmark::DoNotOptimize(est);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(trials));
  state.SetLabel(std::string(alphabet_name(b.format)));
}
BENCHMARK(BM_MonteCarlo)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
