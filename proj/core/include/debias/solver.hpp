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

#ifndef DEBIAS_SOLVER_HPP_
#define DEBIAS_SOLVER_HPP_

#include <string>
#include <vector>

#include "debias/bregman.hpp"
#include "debias/core.hpp"
#include "debias/operators.hpp"

// First-order primal-dual iterations for
//   step 1:  min_u 1/2 ||A u - f||^2 + alpha ||Gamma u||_1
//   step 2a: min_u 1/2 ||A u - f||^2 + gamma (||Gamma u||_1 - <p, u>)
//   step 2b: min_{u,z} 1/2 ||A u - f||^2 + gamma (||Gamma(u - z)||_1
//              + ||Gamma z||_1 - <p, u> + 2 <p, z>)
// with the normalized primal-dual gap and dual-constraint residuals as the
// stopping test.
namespace debias {

enum class StepRule {
  kPaperFixed,    // sigma and tau taken verbatim from the config
  kNormAdaptive,  // sigma * tau = (0.99 / ||K||)^2 for the stacked operator K
};

enum class Termination { kConverged, kMaxIter, kDiverged };

std::string to_string(StepRule rule);
std::string to_string(Termination t);
StepRule parse_step_rule(const std::string& text);

struct PdConfig {
  double alpha = 0.3;
  double gamma = 1000.0;
  double sigma = 0.35355339059327373;  // 1/sqrt(8)
  double tau = 0.35355339059327373;
  double eps1 = 1e-5;
  double eps2 = 1e-6;
  double eps3 = 1e-6;
  int max_iter = 50000;
  int check_every = 10;
  StepRule step_rule = StepRule::kNormAdaptive;
  Regularizer regularizer = Regularizer::kAnisotropic;
  // Feed u^k instead of the extrapolated point into the dual updates.
  bool literal_pseudocode = false;
  // sigma / tau under norm_adaptive (sigma * tau stays (0.99/||K||)^2),
  // for step 1 and for both second steps. The second-step saddles are
  // flat along the manifold and run faster with a larger dual step.
  double step_ratio = 1.0;
  double debias_step_ratio = 3.0;
  double divergence_limit = 1e12;
  int norm_iters = 100;
  Seed norm_seed{0x5eed};

  // Parameters for TV denoising of a [0,1] image: alpha 0.3, gamma 1000,
  // sigma = tau = 1/sqrt(8), eps1 1e-5, eps2 = eps3 = 1e-6, fixed steps.
  static PdConfig table1();

  // Throws ContractViolation on an invalid field.
  void validate() const;
  friend bool operator==(const PdConfig&, const PdConfig&) = default;
};

struct SolveReport {
  int iterations = 0;
  // Normalized gap at every check.
  std::vector<double> gap_history;
  double final_gap = 0.0;
  double residual2 = 0.0;  // ||A^T y1 + Gamma^T y2 - gamma p||_1 / n
  double residual3 = 0.0;  // ||-Gamma^T y2 + Gamma^T y3 + 2 gamma p||_1 / n
  Termination termination = Termination::kMaxIter;
  double sigma = 0.0;
  double tau = 0.0;
  double operator_norm = 0.0;  // ||K|| used for the steps (0 when fixed)

  bool converged() const { return termination == Termination::kConverged; }
};

// Iterates of the saddle-point problems. z and y3 are only used by step 2b.
struct PdState {
  GridSignal u;
  GridSignal z;
  VectorField y1;
  VectorField y2;
  VectorField y3;
};

enum class GapVariant { kBregman, kInfimalConvolution };

// Normalized primal-dual gap with the ball indicators dropped:
//   a: (-w<p,u> + 1/2||Au-f||^2 + w J(Gamma u) + 1/2||y1||^2 + <y1,f>) / n
//   b: a + (2w<p,z> + w J(Gamma u - Gamma z) + w J(Gamma z)
//           - w J(Gamma u)) / n
// where w is the soft-constraint weight (alpha with p = 0 for step 1). May be
// negative while the dual constraints are violated.
double pd_gap(GapVariant variant, const PdState& state, double weight,
              const GridSignal& p, const GridSignal& f, const LinearMap& a,
              const LinearMap& gamma, Regularizer regularizer);

struct StepOneResult {
  GridSignal u;
  Subgradient subgradient;
  PdState state;
  SolveReport report;
};

struct StepTwoResult {
  GridSignal u;
  GridSignal z;  // zero for the Bregman variant
  PdState state;
  SolveReport report;
};

StepOneResult solve_step1(const LinearMap& a, const LinearMap& gamma,
                          const GridSignal& f, const PdConfig& cfg);

// Uses cfg.gamma as the soft-constraint weight. With p = 0 and gamma = alpha
// this is exactly step 1.
//
// Both second-step solvers start from zero unless `initial` is given; only
// the starting point changes, not the fixed point of the iteration.
StepTwoResult solve_step2_bregman(const LinearMap& a, const LinearMap& gamma,
                                  const GridSignal& f, const GridSignal& p,
                                  const PdConfig& cfg,
                                  const PdState* initial = nullptr);

StepTwoResult solve_step2_icb(const LinearMap& a, const LinearMap& gamma,
                              const GridSignal& f, const GridSignal& p,
                              const PdConfig& cfg,
                              const PdState* initial = nullptr);

// Starting point for a second step built from the first: u = u_alpha,
// y1 unchanged, y2 rescaled from radius alpha to gamma and, for the ICB
// variant, y3 = -y2 and z = 0 (z = 0 is optimal in the ICB at u_alpha).
PdState warm_start_from(const StepOneResult& step1, const PdConfig& cfg,
                        GapVariant variant);

}  // namespace debias

#endif  // DEBIAS_SOLVER_HPP_
