/*
 * Copyright 2026 The ncent Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "ncent/ncent.hpp"

using namespace ncent;

namespace {

void BM_SymplecticSpectrum8(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const VarianceMatrix v = random_variance(bases::particle_blocked_pair(), rng, 1.0, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(symplectic_spectrum(partial_transpose(v, 2)).min());
}
BENCHMARK(BM_SymplecticSpectrum8);

void BM_EffectiveVariance(benchmark::State& state) {
  const NCPairParams p = NCPairParams::figure(1.0, 1.4, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(effective_variance(p));
}
BENCHMARK(BM_EffectiveVariance);

void BM_AlphaMinSearch(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(alpha_min_search(1.0, 0.8));
}
BENCHMARK(BM_AlphaMinSearch)->Unit(benchmark::kMicrosecond);

void BM_OracleStateMoments(benchmark::State& state) {
  const NCPairParams p = NCPairParams::figure(1.0, 1.4, 1.0);
  const oracle::QuadratureConfig cfg{static_cast<int>(state.range(0)), 8.0};
  for (auto _ : state) benchmark::DoNotOptimize(oracle::state_moments_unchecked(p, cfg));
}
BENCHMARK(BM_OracleStateMoments)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_FigureSweep(benchmark::State& state) {
  FigureRequest r = default_request(static_cast<int>(state.range(0)));
  r.mode = AlphaMode::computed;
  for (auto _ : state) benchmark::DoNotOptimize(run_figure(r));
}
BENCHMARK(BM_FigureSweep)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
