// Copyright 2026 The debias Authors
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

#include <random>

#include "debias/operators.hpp"
#include "debias/pipeline.hpp"
#include "debias/proximal.hpp"
#include "debias/solver.hpp"

namespace {

using namespace debias;

GridSignal random_signal(Shape s, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  GridSignal u(s);
  for (double& v : u.values()) v = d(rng);
  return u;
}

void BM_Gradient2d(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const LinearMap g = LinearMap::gradient2d(Shape{n, n});
  const GridSignal u = random_signal(Shape{n, n}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(g.apply(u));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n));
}
BENCHMARK(BM_Gradient2d)->Arg(64)->Arg(256);

void BM_Divergence2d(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const LinearMap g = LinearMap::gradient2d(Shape{n, n});
  const VectorField y = g.apply(random_signal(Shape{n, n}, 2));
  for (auto _ : state) benchmark::DoNotOptimize(g.adjoint(y));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n));
}
BENCHMARK(BM_Divergence2d)->Arg(64)->Arg(256);

void BM_Convolution1d(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const LinearMap a = LinearMap::convolution1d(Shape{n, 1}, gaussian_kernel(9, 2.0));
  const GridSignal u = random_signal(Shape{n, 1}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(a.apply(u));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_Convolution1d)->Arg(128)->Arg(4096);

void BM_SoftThreshold(benchmark::State& state) {
  const GridSignal f = random_signal(Shape{static_cast<std::size_t>(state.range(0)), 1}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(soft_threshold_scalar(f, Threshold(0.5)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SoftThreshold)->Arg(4096)->Arg(65536);

void BM_DiskProjection(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const VectorField y = LinearMap::gradient2d(Shape{n, n}).apply(random_signal(Shape{n, n}, 5));
  for (auto _ : state) {
    VectorField z = y;
    disk_project_in_place(z, 1.0);
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK(BM_DiskProjection)->Arg(64)->Arg(256);

// Step 1 of anisotropic TV denoising on a 64x64 noisy cartoon-like image.
void BM_Step1TvDenoise(benchmark::State& state) {
  const Shape sh{64, 64};
  GridSignal f = random_signal(sh, 6);
  for (std::size_t r = 16; r < 48; ++r)
    for (std::size_t c = 16; c < 48; ++c) f.at(r, c) += 4.0;
  const GridSignal scaled = 0.25 * f;
  PdConfig cfg = PdConfig::table1();
  cfg.step_rule = StepRule::kNormAdaptive;
  const LinearMap id = LinearMap::identity(sh), g = LinearMap::gradient2d(sh);
  for (auto _ : state) benchmark::DoNotOptimize(solve_step1(id, g, scaled, cfg));
}
BENCHMARK(BM_Step1TvDenoise)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
