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

#ifndef DEBIAS_ANALYSIS_HPP_
#define DEBIAS_ANALYSIS_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "debias/core.hpp"
#include "debias/operators.hpp"
#include "debias/pipeline.hpp"
#include "debias/solver.hpp"

namespace debias {

struct Psnr {
  double db = 0.0;
  bool infinite = false;  // exact match; db is +inf
};

// 10 log10(peak^2 / MSE).
Psnr psnr(const GridSignal& u, const GridSignal& reference, double peak = 1.0);

// u + N(0, std^2) i.i.d. from a mt19937_64 stream seeded with `seed`.
GridSignal add_gaussian_noise(const GridSignal& u, double stddev, Seed seed);

using Estimator = std::function<GridSignal(const GridSignal&)>;

struct BiasReport {
  GridSignal mean_estimate;
  GridSignal statistical_bias;  // u* - mean_estimate
  GridSignal variance;          // pointwise, unbiased (n - 1)
  GridSignal deterministic_bias;  // u* - estimator(f*)
  // Filled when a first-step estimator is supplied:
  //   model  = u* - estimator(f*)
  //   method = estimator(f*) - first_step(f*)
  // so model + method = u* - first_step(f*).
  std::optional<GridSignal> model_bias;
  std::optional<GridSignal> method_bias;

  // Root mean square over entries.
  double statistical_bias_rms = 0.0;
  double deterministic_bias_rms = 0.0;
  double mean_variance = 0.0;
  double std_dev_rms = 0.0;  // sqrt(mean_variance)
  std::optional<double> model_bias_rms;
  std::optional<double> method_bias_rms;

  std::size_t n_realizations = 0;  // realizations that entered the averages
  std::size_t failures = 0;
  std::vector<std::size_t> failed_indices;
};

struct MonteCarloOptions {
  std::size_t realizations = 500;
  Seed base_seed{1};
  // Worker threads; results are aggregated in realization order.
  unsigned threads = 1;
  const Estimator* first_step = nullptr;
};

// Realization i uses f* + noise drawn with seed base_seed + i. An estimator
// that throws or returns non-finite values is recorded as a failure.
BiasReport monte_carlo_bias_variance(const Estimator& estimator,
                                     const GridSignal& u_star,
                                     const GridSignal& f_star,
                                     double noise_std,
                                     const MonteCarloOptions& opts);

struct SweepProblem {
  LinearMap a;
  LinearMap gamma;
  GridSignal f;
  std::optional<GridSignal> truth;
};

struct SweepMonteCarlo {
  GridSignal u_star;
  GridSignal f_star;
  double noise_std = 0.0;
  std::size_t realizations = 100;
  Seed base_seed{1};
  unsigned threads = 1;
};

struct SweepRow {
  double alpha = 0.0;
  double tv_u = 0.0;        // J(Gamma u_alpha)
  double residual_u = 0.0;  // 1/2 ||A u_alpha - f||^2
  double psnr_u = 0.0;      // NaN without a truth
  double psnr_ub = 0.0;
  double psnr_uic = 0.0;
  double tv_ub = 0.0;
  double residual_ub = 0.0;
  double tv_uic = 0.0;
  double residual_uic = 0.0;
  // Monte-Carlo columns (NaN when disabled). The debiased estimator is the
  // Bregman variant unless only the ICB was requested.
  double bias_u = 0.0;
  double bias_ub = 0.0;
  double std_u = 0.0;
  double std_ub = 0.0;
  bool complete = true;
  std::string error;
};

struct SweepCurve {
  std::vector<SweepRow> rows;
};

// One row per alpha; alphas must be positive and strictly increasing.
SweepCurve sweep_regularization(const SweepProblem& problem,
                                const std::vector<double>& alphas,
                                const PdConfig& cfg, DebiasMethod which,
                                const std::optional<SweepMonteCarlo>& mc = {});

// alphas from "start:stop:count", linearly spaced with both ends included.
std::vector<double> parse_alpha_range(const std::string& text);

}  // namespace debias

#endif  // DEBIAS_ANALYSIS_HPP_
