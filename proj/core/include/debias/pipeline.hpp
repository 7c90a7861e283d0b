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

#ifndef DEBIAS_PIPELINE_HPP_
#define DEBIAS_PIPELINE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "debias/bregman.hpp"
#include "debias/core.hpp"
#include "debias/operators.hpp"
#include "debias/solver.hpp"

namespace debias {

enum class DebiasMethod { kBregman, kIcb, kBoth };

std::string to_string(DebiasMethod m);
DebiasMethod parse_debias_method(const std::string& text);

struct TwoStepOptions {
  // Start step 2 from the step-1 iterates (see warm_start_from).
  bool warm_start = true;
  // Hand step 2 the projected subgradient Gamma^T P(q) instead of the raw
  // formula value.
  bool feasible_subgradient = true;
  // With the feasible subgradient, set q to the unit direction of Gamma u_alpha
  // at points where |Gamma u_alpha| > support_threshold and |q| >= 1 -
  // support_slack, so that those points contribute exactly zero to the Bregman
  // distance at u_alpha. support_threshold <= 0 disables.
  double support_threshold = 1e-4;
  double support_slack = 1e-2;
  // Manifold tolerance; <= 0 selects 10 * n * eps2.
  double manifold_tol = 0.0;
};

struct DebiasResult {
  GridSignal u_alpha;
  Subgradient p_alpha;
  // Subgradient actually passed to step 2 and max |p_alpha - p_step2|.
  GridSignal p_step2;
  double subgradient_shift = 0.0;
  SolveReport step1;

  std::optional<GridSignal> u_hat_b;
  std::optional<SolveReport> step2_b;
  std::optional<MembershipReport> manifold_b;  // u_hat_b against M^B

  std::optional<GridSignal> u_hat_ic;
  std::optional<GridSignal> z;
  std::optional<SolveReport> step2_ic;
  std::optional<MembershipReport> manifold_ic;  // u_hat_ic against M^IC
};

DebiasResult run_two_step(const LinearMap& a, const LinearMap& gamma,
                          const GridSignal& f, const PdConfig& cfg,
                          DebiasMethod which, const TwoStepOptions& opts = {});

struct BregmanIterate {
  GridSignal u;
  GridSignal p;          // p^k, the subgradient produced by this iterate
  double residual = 0.0;  // ||A u^k - f||_2
  SolveReport report;
};

struct BregmanTrace {
  std::vector<BregmanIterate> iterates;
  bool stopped_on_discrepancy = false;
  std::size_t failures = 0;  // subproblems that did not converge
};

inline constexpr int kDefaultBregmanSteps = 10;

// u^{k+1} = argmin 1/2 ||Au - f||^2 + alpha (J(Gamma u) - <p^k, u>),
// p^{k+1} = p^k + A^T (f - A u^{k+1}) / alpha, p^0 = 0. With `noise_std`
// the loop stops after the first iterate with ||Au - f||_2 <= sqrt(n) std.
// cfg.gamma is ignored; cfg.alpha is overridden by `alpha`.
BregmanTrace run_bregman_iterations(const LinearMap& a, const LinearMap& gamma,
                                    const GridSignal& f, double alpha,
                                    int steps,
                                    std::optional<double> noise_std,
                                    const PdConfig& cfg);

struct SingularVectorReport {
  GridSignal u_lambda;
  GridSignal f;
  DebiasResult result;
  double err_u_alpha = 0.0;   // ||u_alpha - (c - alpha lambda) u^lambda||_inf
  double err_u_hat_b = 0.0;   // ||u_hat_b - c u^lambda||_inf
  double err_u_hat_ic = 0.0;  // ||u_hat_ic - c u^lambda||_inf
};

// A = Gamma = identity, u^lambda = pattern / lambda with pattern entries in
// {-1, 0, 1}, f = c u^lambda, alpha from cfg. Requires c > lambda alpha > 0
// and a nonzero pattern.
SingularVectorReport run_singular_vector_experiment(
    double lambda, double c, const std::vector<int>& pattern, Shape shape,
    const PdConfig& cfg);

}  // namespace debias

#endif  // DEBIAS_PIPELINE_HPP_
