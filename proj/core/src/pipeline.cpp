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

#include "debias/pipeline.hpp"

#include <cmath>

#include "debias/proximal.hpp"

namespace debias {

std::string to_string(DebiasMethod m) {
  switch (m) {
    case DebiasMethod::kBregman:
      return "bregman";
    case DebiasMethod::kIcb:
      return "icb";
    case DebiasMethod::kBoth:
      return "both";
  }
  return "unknown";
}

DebiasMethod parse_debias_method(const std::string& text) {
  if (text == "bregman") return DebiasMethod::kBregman;
  if (text == "icb") return DebiasMethod::kIcb;
  if (text == "both") return DebiasMethod::kBoth;
  throw ContractViolation("unknown debias method '" + text +
                          "' (expected bregman, icb or both)");
}

namespace {

double residual_norm(const LinearMap& a, const GridSignal& u,
                     const GridSignal& f) {
  const VectorField au = a.apply(u);
  double s = 0.0;
  for (std::size_t i = 0; i < au.size(); ++i) {
    const double r = au[i] - f[i];
    s += r * r;
  }
  return std::sqrt(s);
}

// Pointwise: q_i := g_i / |g_i| where |g_i| > threshold and |q_i| >= 1 - slack
// (componentwise for the anisotropic penalty).
void align_with_support(VectorField& q, const VectorField& g, Regularizer r,
                        double threshold, double slack) {
  const std::size_t d = q.dim();
  const std::size_t points = q.size() / d;
  for (std::size_t i = 0; i < points; ++i) {
    if (r == Regularizer::kIsotropic) {
      double m = 0.0;
      for (std::size_t c = 0; c < d; ++c) m += g[i * d + c] * g[i * d + c];
      m = std::sqrt(m);
      double mq = 0.0;
      for (std::size_t c = 0; c < d; ++c) mq += q[i * d + c] * q[i * d + c];
      if (m > threshold && std::sqrt(mq) >= 1.0 - slack)
        for (std::size_t c = 0; c < d; ++c) q[i * d + c] = g[i * d + c] / m;
    } else {
      for (std::size_t c = 0; c < d; ++c) {
        const double v = g[i * d + c];
        if (std::abs(v) > threshold && std::abs(q[i * d + c]) >= 1.0 - slack)
          q[i * d + c] = v > 0.0 ? 1.0 : -1.0;
      }
    }
  }
}

}  // namespace

DebiasResult run_two_step(const LinearMap& a, const LinearMap& gamma,
                          const GridSignal& f, const PdConfig& cfg,
                          DebiasMethod which, const TwoStepOptions& opts) {
  cfg.validate();
  StepOneResult s1 = solve_step1(a, gamma, f, cfg);

  DebiasResult out{s1.u, s1.subgradient, s1.subgradient.p, 0.0, s1.report,
                   {}, {}, {}, {}, {}, {}, {}};

  // Subgradient seen by step 2 and by the membership tests.
  Subgradient used = s1.subgradient;
  if (opts.feasible_subgradient && used.q.has_value()) {
    used.p = feasible_subgradient(used, gamma, cfg.regularizer);
    if (cfg.regularizer == Regularizer::kIsotropic) {
      disk_project_in_place(*used.q, 1.0);
    } else {
      clamp_in_place(*used.q, 1.0);
    }
    if (opts.support_threshold > 0.0) {
      align_with_support(*used.q, gamma.apply(s1.u), cfg.regularizer,
                         opts.support_threshold, opts.support_slack);
      used.p = gamma.adjoint(*used.q);
    }
  }
  out.p_step2 = used.p;
  out.subgradient_shift = max_abs_difference(used.p, s1.subgradient.p);

  const double tol_value =
      opts.manifold_tol > 0.0
          ? opts.manifold_tol
          : 10.0 * static_cast<double>(f.size()) * cfg.eps2;
  const ManifoldTolerance tol(tol_value);
  const bool supported = gamma.kind() != MapKind::kConvolution1d;
  const PenaltyDescriptor penalty{&gamma, cfg.regularizer};

  if (which != DebiasMethod::kIcb) {
    const PdState init = warm_start_from(s1, cfg, GapVariant::kBregman);
    StepTwoResult r = solve_step2_bregman(a, gamma, f, used.p, cfg,
                                          opts.warm_start ? &init : nullptr);
    if (supported)
      out.manifold_b = membership(ManifoldKind::kBregman, r.u, s1.u, used,
                                  penalty, tol);
    out.u_hat_b = std::move(r.u);
    out.step2_b = r.report;
  }
  if (which != DebiasMethod::kBregman) {
    const PdState init =
        warm_start_from(s1, cfg, GapVariant::kInfimalConvolution);
    StepTwoResult r = solve_step2_icb(a, gamma, f, used.p, cfg,
                                      opts.warm_start ? &init : nullptr);
    if (supported && used.q.has_value())
      out.manifold_ic = membership(ManifoldKind::kInfimalConvolution, r.u,
                                   s1.u, used, penalty, tol);
    out.u_hat_ic = std::move(r.u);
    out.z = std::move(r.z);
    out.step2_ic = r.report;
  }
  return out;
}

BregmanTrace run_bregman_iterations(const LinearMap& a, const LinearMap& gamma,
                                    const GridSignal& f, double alpha,
                                    int steps,
                                    std::optional<double> noise_std,
                                    const PdConfig& cfg) {
  require(steps >= 1, "run_bregman_iterations: need at least one step");
  require(alpha > 0.0 && std::isfinite(alpha),
          "run_bregman_iterations: alpha must be > 0");
  if (noise_std.has_value())
    require(*noise_std >= 0.0 && std::isfinite(*noise_std),
            "run_bregman_iterations: noise level must be >= 0");

  // Each subproblem is the Bregman-form second step with gamma := alpha.
  PdConfig sub = cfg;
  sub.alpha = alpha;
  sub.gamma = alpha;
  sub.debias_step_ratio = cfg.step_ratio;
  sub.validate();

  const double target =
      noise_std.has_value()
          ? std::sqrt(static_cast<double>(f.size())) * *noise_std
          : -1.0;

  BregmanTrace trace;
  GridSignal p(a.domain());
  std::optional<PdState> state;
  for (int k = 0; k < steps; ++k) {
    StepTwoResult r = solve_step2_bregman(a, gamma, f, p, sub,
                                          state ? &*state : nullptr);
    if (!r.report.converged()) ++trace.failures;
    VectorField w = a.apply(r.u);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = (f[i] - w[i]) / alpha;
    p += a.adjoint(w);
    BregmanIterate it{r.u, p, residual_norm(a, r.u, f), r.report};
    state = std::move(r.state);
    trace.iterates.push_back(std::move(it));
    if (target >= 0.0 && trace.iterates.back().residual <= target) {
      trace.stopped_on_discrepancy = true;
      break;
    }
  }
  return trace;
}

SingularVectorReport run_singular_vector_experiment(
    double lambda, double c, const std::vector<int>& pattern, Shape shape,
    const PdConfig& cfg) {
  require(shape.size() == pattern.size(),
          "run_singular_vector_experiment: pattern does not fill the shape");
  require(lambda > 0.0 && cfg.alpha > 0.0,
          "run_singular_vector_experiment: lambda and alpha must be > 0");
  require(c > lambda * cfg.alpha,
          "run_singular_vector_experiment: requires c > lambda * alpha");
  bool nonzero = false;
  std::vector<double> v(pattern.size());
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    require(pattern[i] >= -1 && pattern[i] <= 1,
            "run_singular_vector_experiment: pattern entries must be -1, 0 "
            "or 1");
    nonzero = nonzero || pattern[i] != 0;
    v[i] = static_cast<double>(pattern[i]) / lambda;
  }
  require(nonzero,
          "run_singular_vector_experiment: an all-zero pattern is not a "
          "singular vector");

  const LinearMap id = LinearMap::identity(shape);
  GridSignal u_lambda(shape, std::move(v));
  GridSignal f = c * u_lambda;
  DebiasResult res = run_two_step(id, id, f, cfg, DebiasMethod::kBoth);

  SingularVectorReport rep{u_lambda, f, std::move(res), 0.0, 0.0, 0.0};
  rep.err_u_alpha = max_abs_difference(
      rep.result.u_alpha, (c - cfg.alpha * lambda) * u_lambda);
  rep.err_u_hat_b = max_abs_difference(*rep.result.u_hat_b, f);
  rep.err_u_hat_ic = max_abs_difference(*rep.result.u_hat_ic, f);
  return rep;
}

}  // namespace debias
