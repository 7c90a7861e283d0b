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

#include "debias/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "debias/proximal.hpp"

namespace debias {

std::string to_string(StepRule rule) {
  return rule == StepRule::kPaperFixed ? "paper_fixed" : "norm_adaptive";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kConverged:
      return "converged";
    case Termination::kMaxIter:
      return "max_iter";
    case Termination::kDiverged:
      return "diverged";
  }
  return "unknown";
}

StepRule parse_step_rule(const std::string& text) {
  if (text == "paper_fixed") return StepRule::kPaperFixed;
  if (text == "norm_adaptive") return StepRule::kNormAdaptive;
  throw ContractViolation("unknown step rule '" + text +
                          "' (expected paper_fixed or norm_adaptive)");
}

PdConfig PdConfig::table1() {
  PdConfig cfg;
  cfg.alpha = 0.3;
  cfg.gamma = 1000.0;
  cfg.sigma = 1.0 / std::sqrt(8.0);
  cfg.tau = 1.0 / std::sqrt(8.0);
  cfg.eps1 = 1e-5;
  cfg.eps2 = 1e-6;
  cfg.eps3 = 1e-6;
  cfg.step_rule = StepRule::kPaperFixed;
  return cfg;
}

void PdConfig::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  require(positive(alpha), "PdConfig: alpha must be > 0");
  require(positive(gamma), "PdConfig: gamma must be > 0");
  require(positive(sigma) && positive(tau),
          "PdConfig: sigma and tau must be > 0");
  require(positive(eps1) && positive(eps2) && positive(eps3),
          "PdConfig: stopping thresholds must be > 0");
  require(max_iter >= 1, "PdConfig: max_iter must be >= 1");
  require(check_every >= 1, "PdConfig: check_every must be >= 1");
  require(positive(divergence_limit), "PdConfig: divergence_limit must be > 0");
  require(norm_iters >= 10, "PdConfig: norm_iters must be >= 10");
  require(positive(step_ratio) && positive(debias_step_ratio),
          "PdConfig: step ratios must be > 0");
}

namespace {

void project_dual(VectorField& y, double radius, Regularizer r) {
  if (r == Regularizer::kIsotropic) {
    disk_project_in_place(y, radius);
  } else {
    clamp_in_place(y, radius);
  }
}

double l1_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

void check_problem(const LinearMap& a, const LinearMap& gamma,
                   const GridSignal& f) {
  require(a.domain() == gamma.domain(),
          "solver: A and Gamma must share a domain");
  require(a.codomain_dim() == 1 && a.codomain_grid() == f.shape(),
          "solver: f does not match the codomain of A");
  require(f.all_finite(), "solver: f must be finite");
}

void check_initial(const PdState& initial, const PdState& layout,
                   bool with_z) {
  require(initial.u.shape() == layout.u.shape() &&
              initial.y1.same_layout(layout.y1) &&
              initial.y2.same_layout(layout.y2),
          "solver: initial state layout mismatch");
  if (with_z)
    require(initial.z.shape() == layout.z.shape() &&
                initial.y3.same_layout(layout.y3),
            "solver: initial state layout mismatch");
  require(initial.u.all_finite() && initial.y1.all_finite() &&
              initial.y2.all_finite(),
          "solver: initial state must be finite");
}

// Stopping score relative to the thresholds; <= 1 in every component means
// converged.
double score(double gap, double r2, double r3, const PdConfig& cfg) {
  return std::max({std::abs(gap) / cfg.eps1, r2 / cfg.eps2, r3 / cfg.eps3});
}

struct Steps {
  double sigma;
  double tau;
  double norm;
};

Steps choose_steps(const PdConfig& cfg, double operator_norm, double ratio) {
  if (cfg.step_rule == StepRule::kPaperFixed) return {cfg.sigma, cfg.tau, 0.0};
  if (operator_norm <= 0.0) return {cfg.sigma, cfg.tau, operator_norm};
  const double s = 0.99 / operator_norm;
  return {s * ratio, s / ratio, operator_norm};
}

double icb_block_norm(const LinearMap& a, const LinearMap& gamma,
                      const PdConfig& cfg) {
  const std::size_t n = a.domain().size();
  GridSignal x(a.domain());
  GridSignal t(a.domain());
  VectorField ya = a.zero_codomain();
  VectorField yg = gamma.zero_codomain();
  GridSignal u(a.domain());
  GridSignal z(a.domain());
  // K(u, z) = (A u, Gamma (u - z), Gamma z).
  const auto normal = [&](std::span<const double> in, std::span<double> out) {
    std::copy(in.begin(), in.begin() + n, u.values().begin());
    std::copy(in.begin() + n, in.end(), z.values().begin());
    a.apply_into(u, ya);
    a.adjoint_into(ya, t);
    for (std::size_t i = 0; i < n; ++i) out[i] = t[i];
    for (std::size_t i = 0; i < n; ++i) x[i] = u[i] - z[i];
    gamma.apply_into(x, yg);
    gamma.adjoint_into(yg, t);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] += t[i];
      out[n + i] = -t[i];
    }
    gamma.apply_into(z, yg);
    gamma.adjoint_into(yg, t);
    for (std::size_t i = 0; i < n; ++i) out[n + i] += t[i];
  };
  const auto pm = power_method(2 * n, normal, cfg.norm_iters, cfg.norm_seed);
  const double an = a.norm_bound();
  const double gn = gamma.norm_bound();
  const double bound =
      std::sqrt(std::max(an * an + 2.0 * gn * gn, 3.0 * gn * gn));
  return std::min(kNormSafetyFactor * pm.ratio, bound);
}

// Shared by step 1 (weight alpha, p = 0), step 2a and Bregman iterations.
StepTwoResult run_bregman_form(const LinearMap& a, const LinearMap& gamma,
                               const GridSignal& f, const GridSignal& p,
                               double weight, double ratio,
                               const PdConfig& cfg,
                               const PdState* initial = nullptr) {
  cfg.validate();
  check_problem(a, gamma, f);
  require(p.shape() == a.domain(), "solver: p does not match the domain");
  require(p.all_finite(), "solver: p must be finite");

  const std::size_t n = a.domain().size();
  const double inv_n = 1.0 / static_cast<double>(n);
  const Steps steps = choose_steps(
      cfg, cfg.step_rule == StepRule::kNormAdaptive
               ? estimate_norm(StackedMap(a, gamma), cfg.norm_iters,
                               cfg.norm_seed)
               : 0.0,
      ratio);
  const double sigma = steps.sigma;
  const double tau = steps.tau;

  PdState st{GridSignal(a.domain()), GridSignal(a.domain()), a.zero_codomain(),
             gamma.zero_codomain(), VectorField()};
  if (initial != nullptr) {
    check_initial(*initial, st, false);
    st.u = initial->u;
    st.y1 = initial->y1;
    st.y2 = initial->y2;
  }
  GridSignal u_bar = st.u;
  GridSignal u_prev(a.domain());
  VectorField a_buf = a.zero_codomain();
  VectorField g_buf = gamma.zero_codomain();
  GridSignal at_y1(a.domain());
  GridSignal gt_y2(a.domain());
  GridSignal resid(a.domain());

  SolveReport report;
  report.sigma = sigma;
  report.tau = tau;
  report.operator_norm = steps.norm;

  std::optional<PdState> best;
  double best_score = std::numeric_limits<double>::infinity();
  double best_gap = 0.0;
  double best_r2 = 0.0;
  const double inv_1ps = 1.0 / (1.0 + sigma);

  int k = 0;
  for (; k < cfg.max_iter; ++k) {
    const GridSignal& src = cfg.literal_pseudocode ? st.u : u_bar;
    a.apply_into(src, a_buf);
    for (std::size_t i = 0; i < st.y1.size(); ++i)
      st.y1[i] = (st.y1[i] + sigma * a_buf[i] - sigma * f[i]) * inv_1ps;
    gamma.apply_into(src, g_buf);
    for (std::size_t i = 0; i < st.y2.size(); ++i)
      st.y2[i] += sigma * g_buf[i];
    project_dual(st.y2, weight, cfg.regularizer);

    a.adjoint_into(st.y1, at_y1);
    gamma.adjoint_into(st.y2, gt_y2);
    for (std::size_t i = 0; i < n; ++i) {
      resid[i] = at_y1[i] + gt_y2[i] - weight * p[i];
      u_prev[i] = st.u[i];
      st.u[i] -= tau * resid[i];
      u_bar[i] = 2.0 * st.u[i] - u_prev[i];
    }

    const bool last = k + 1 == cfg.max_iter;
    if ((k + 1) % cfg.check_every != 0 && !last) continue;

    const double gap = pd_gap(GapVariant::kBregman, st, weight, p, f, a, gamma,
                              cfg.regularizer);
    const double r2 = l1_of(resid.values()) * inv_n;
    report.gap_history.push_back(gap);
    if (!std::isfinite(gap) || !std::isfinite(r2) ||
        std::abs(gap) > cfg.divergence_limit || !st.u.all_finite()) {
      report.termination = Termination::kDiverged;
      ++k;
      break;
    }
    const double s = score(gap, r2, 0.0, cfg);
    if (s <= best_score) {
      best_score = s;
      best = st;
      best_gap = gap;
      best_r2 = r2;
    }
    if (std::abs(gap) < cfg.eps1 && r2 < cfg.eps2) {
      best_gap = gap;
      best_r2 = r2;
      report.termination = Termination::kConverged;
      ++k;
      break;
    }
  }
  report.iterations = std::min(k, cfg.max_iter);
  if (report.termination != Termination::kConverged) {
    if (best.has_value()) {
      st = *best;
    } else if (report.termination == Termination::kDiverged) {
      st.u.fill(0.0);
    }
  }
  report.final_gap = best_gap;
  report.residual2 = best_r2;

  StepTwoResult out{st.u, GridSignal(a.domain()), std::move(st), report};
  return out;
}

}  // namespace

double pd_gap(GapVariant variant, const PdState& state, double weight,
              const GridSignal& p, const GridSignal& f, const LinearMap& a,
              const LinearMap& gamma, Regularizer regularizer) {
  const std::size_t n = state.u.size();
  require(n > 0, "pd_gap: empty state");
  const VectorField au = a.apply(state.u);
  double fit = 0.0;
  for (std::size_t i = 0; i < au.size(); ++i) {
    const double r = au[i] - f[i];
    fit += r * r;
  }
  double dual = 0.0;
  for (std::size_t i = 0; i < state.y1.size(); ++i)
    dual += 0.5 * state.y1[i] * state.y1[i] + state.y1[i] * f[i];

  double total = -weight * inner_product(p, state.u) + 0.5 * fit + dual;
  const VectorField gu = gamma.apply(state.u);
  if (variant == GapVariant::kBregman) {
    total += weight * penalty_value(gu, regularizer);
  } else {
    const VectorField gz = gamma.apply(state.z);
    total += 2.0 * weight * inner_product(p, state.z) +
             weight * penalty_value(gu - gz, regularizer) +
             weight * penalty_value(gz, regularizer);
  }
  return total / static_cast<double>(n);
}

StepOneResult solve_step1(const LinearMap& a, const LinearMap& gamma,
                          const GridSignal& f, const PdConfig& cfg) {
  const GridSignal zero(a.domain());
  StepTwoResult r = run_bregman_form(a, gamma, f, zero, cfg.alpha, cfg.step_ratio, cfg);
  StepOneResult out{std::move(r.u), {}, std::move(r.state), r.report};
  out.subgradient =
      subgradient_from_optimality(a, gamma, f, out.u, cfg.alpha);
  if (!out.subgradient.q.has_value()) {
    // Dual certificate: y2 / alpha lies in the unit ball and
    // Gamma^T (y2 / alpha) ~ p at convergence.
    out.subgradient.q = (1.0 / cfg.alpha) * out.state.y2;
    out.subgradient.q_from_dual = true;
  }
  return out;
}

PdState warm_start_from(const StepOneResult& step1, const PdConfig& cfg,
                        GapVariant variant) {
  const double scale = cfg.gamma / step1.subgradient.alpha;
  PdState st;
  st.u = step1.state.u;
  st.z = GridSignal(step1.state.u.shape());
  st.y1 = step1.state.y1;
  st.y2 = scale * step1.state.y2;
  project_dual(st.y2, cfg.gamma, cfg.regularizer);
  if (variant == GapVariant::kInfimalConvolution) {
    st.y3 = -1.0 * st.y2;
  }
  return st;
}

StepTwoResult solve_step2_bregman(const LinearMap& a, const LinearMap& gamma,
                                  const GridSignal& f, const GridSignal& p,
                                  const PdConfig& cfg,
                                  const PdState* initial) {
  return run_bregman_form(a, gamma, f, p, cfg.gamma, cfg.debias_step_ratio, cfg,
                          initial);
}

StepTwoResult solve_step2_icb(const LinearMap& a, const LinearMap& gamma,
                              const GridSignal& f, const GridSignal& p,
                              const PdConfig& cfg, const PdState* initial) {
  cfg.validate();
  check_problem(a, gamma, f);
  require(p.shape() == a.domain(), "solver: p does not match the domain");
  require(p.all_finite(), "solver: p must be finite");

  const std::size_t n = a.domain().size();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double weight = cfg.gamma;
  const Steps steps = choose_steps(
      cfg, cfg.step_rule == StepRule::kNormAdaptive
               ? icb_block_norm(a, gamma, cfg)
               : 0.0,
      cfg.debias_step_ratio);
  PdState st{GridSignal(a.domain()), GridSignal(a.domain()), a.zero_codomain(),
             gamma.zero_codomain(), gamma.zero_codomain()};
  if (initial != nullptr) {
    check_initial(*initial, st, true);
    st = *initial;
  }
  GridSignal u_bar = st.u;
  GridSignal z_bar = st.z;
  GridSignal diff(a.domain());
  VectorField a_buf = a.zero_codomain();
  VectorField g_buf = gamma.zero_codomain();
  GridSignal at_y1(a.domain());
  GridSignal gt_y2(a.domain());
  GridSignal gt_y3(a.domain());
  GridSignal resid2(a.domain());
  GridSignal resid3(a.domain());

  SolveReport report;
  report.operator_norm = steps.norm;

  std::optional<PdState> best;
  double best_score = std::numeric_limits<double>::infinity();
  double best_gap = 0.0;
  double best_r2 = 0.0;
  double best_r3 = 0.0;

  const double sigma = steps.sigma;
  const double tau = steps.tau;
  const double inv_1ps = 1.0 / (1.0 + sigma);
  int k = 0;
  for (; k < cfg.max_iter; ++k) {
    const GridSignal& su = cfg.literal_pseudocode ? st.u : u_bar;
    const GridSignal& sz = cfg.literal_pseudocode ? st.z : z_bar;
    a.apply_into(su, a_buf);
    for (std::size_t i = 0; i < st.y1.size(); ++i)
      st.y1[i] = (st.y1[i] + sigma * a_buf[i] - sigma * f[i]) * inv_1ps;
    for (std::size_t i = 0; i < n; ++i) diff[i] = su[i] - sz[i];
    gamma.apply_into(diff, g_buf);
    for (std::size_t i = 0; i < st.y2.size(); ++i)
      st.y2[i] += sigma * g_buf[i];
    project_dual(st.y2, weight, cfg.regularizer);
    gamma.apply_into(sz, g_buf);
    for (std::size_t i = 0; i < st.y3.size(); ++i)
      st.y3[i] += sigma * g_buf[i];
    project_dual(st.y3, weight, cfg.regularizer);

    a.adjoint_into(st.y1, at_y1);
    gamma.adjoint_into(st.y2, gt_y2);
    gamma.adjoint_into(st.y3, gt_y3);
    for (std::size_t i = 0; i < n; ++i) {
      resid2[i] = at_y1[i] + gt_y2[i] - weight * p[i];
      resid3[i] = -gt_y2[i] + gt_y3[i] + 2.0 * weight * p[i];
      const double u_old = st.u[i];
      const double z_old = st.z[i];
      st.u[i] -= tau * resid2[i];
      st.z[i] -= tau * resid3[i];
      u_bar[i] = 2.0 * st.u[i] - u_old;
      z_bar[i] = 2.0 * st.z[i] - z_old;
    }

    const bool last = k + 1 == cfg.max_iter;
    if ((k + 1) % cfg.check_every != 0 && !last) continue;
    const double gap = pd_gap(GapVariant::kInfimalConvolution, st, weight, p,
                              f, a, gamma, cfg.regularizer);
    const double r2 = l1_of(resid2.values()) * inv_n;
    const double r3 = l1_of(resid3.values()) * inv_n;
    report.gap_history.push_back(gap);
    if (!std::isfinite(gap) || !std::isfinite(r2) || !std::isfinite(r3) ||
        std::abs(gap) > cfg.divergence_limit || !st.u.all_finite() ||
        !st.z.all_finite()) {
      report.termination = Termination::kDiverged;
      ++k;
      break;
    }
    const double s = score(gap, r2, r3, cfg);
    if (s <= best_score) {
      best_score = s;
      best = st;
      best_gap = gap;
      best_r2 = r2;
      best_r3 = r3;
    }
    if (std::abs(gap) < cfg.eps1 && r2 < cfg.eps2 && r3 < cfg.eps3) {
      best_gap = gap;
      best_r2 = r2;
      best_r3 = r3;
      report.termination = Termination::kConverged;
      ++k;
      break;
    }
  }
  report.iterations = std::min(k, cfg.max_iter);
  if (report.termination != Termination::kConverged) {
    if (best.has_value()) {
      st = *best;
    } else if (report.termination == Termination::kDiverged) {
      st.u.fill(0.0);
      st.z.fill(0.0);
    }
  }
  report.final_gap = best_gap;
  report.residual2 = best_r2;
  report.residual3 = best_r3;
  report.sigma = sigma;
  report.tau = tau;

  StepTwoResult out{st.u, st.z, std::move(st), report};
  return out;
}

}  // namespace debias
