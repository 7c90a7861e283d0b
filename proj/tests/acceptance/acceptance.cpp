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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// criteria pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "debias/analysis.hpp"
#include "debias/bregman.hpp"
#include "debias/io.hpp"
#include "debias/pipeline.hpp"
#include "debias/proximal.hpp"
#include "debias/solver.hpp"

namespace debias {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a = 0, double b = 0, double c = 0,
                double d = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---- fidelity log for criterion 12 -----------------------------------------

struct FidelityEntry {
  double residual_alpha;
  double residual_hat;
  double slack;  // n * eps2
};

std::mutex g_log_mutex;
std::vector<FidelityEntry> g_fidelity;
std::size_t g_unconverged_two_step = 0;

double half_residual(const LinearMap& a, const GridSignal& u,
                     const GridSignal& f) {
  const VectorField au = a.apply(u);
  double s = 0.0;
  for (std::size_t i = 0; i < au.size(); ++i) {
    const double r = au[i] - f[i];
    s += r * r;
  }
  return 0.5 * s;
}

void log_fidelity(const LinearMap& a, const GridSignal& f,
                  const GridSignal& u_alpha, const SolveReport& step1,
                  const GridSignal& u_hat, const SolveReport& step2,
                  double eps2) {
  std::lock_guard<std::mutex> lock(g_log_mutex);
  if (!step1.converged() || !step2.converged()) {
    ++g_unconverged_two_step;
    return;
  }
  g_fidelity.push_back({half_residual(a, u_alpha, f), half_residual(a, u_hat, f),
                        static_cast<double>(f.size()) * eps2});
}

DebiasResult two_step_logged(const LinearMap& a, const LinearMap& g,
                             const GridSignal& f, const PdConfig& cfg,
                             DebiasMethod which) {
  DebiasResult r = run_two_step(a, g, f, cfg, which);
  if (r.u_hat_b)
    log_fidelity(a, f, r.u_alpha, r.step1, *r.u_hat_b, *r.step2_b, cfg.eps2);
  if (r.u_hat_ic)
    log_fidelity(a, f, r.u_alpha, r.step1, *r.u_hat_ic, *r.step2_ic, cfg.eps2);
  return r;
}

GridSignal uniform(Shape s, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(lo, hi);
  GridSignal out(s);
  for (double& v : out.values()) v = d(rng);
  return out;
}

// Table 1 tolerances and weights with norm-adaptive steps.
PdConfig table1_adaptive() {
  PdConfig c = PdConfig::table1();
  c.step_rule = StepRule::kNormAdaptive;
  return c;
}

// ---- criteria ----------------------------------------------------------------

Outcome c1_shrinkage() {
  std::mt19937_64 rng(101);
  double worst = 0.0, slowest = 0.0;
  bool converged = true;
  for (double alpha : {0.3, 1.0}) {
    for (int k = 0; k < 20; ++k) {
      const GridSignal f = uniform(Shape{64, 1}, -2.5, 2.5, rng);
      const LinearMap id = LinearMap::identity(f.shape());
      PdConfig cfg;
      cfg.alpha = alpha;
      const auto t0 = Clock::now();
      const StepOneResult r = solve_step1(id, id, f, cfg);
      slowest = std::max(slowest, seconds_since(t0));
      converged = converged && r.report.converged();
      worst = std::max(worst, max_abs_difference(
                                  r.u, soft_threshold_scalar(f, Threshold(alpha))));
    }
  }
  return {worst < 1e-3 && slowest < 1.0,
          fmt("40 solves, max linf error %.2e, slowest %.3f s", worst, slowest) +
              (converged ? "" : ", some runs hit max_iter")};
}

Outcome c2_isotropic() {
  std::mt19937_64 rng(102);
  double worst = 0.0, slowest = 0.0;
  for (double alpha : {0.3, 1.0}) {
    for (int k = 0; k < 20; ++k) {
      const Shape sh{64, 2};
      const GridSignal f = uniform(sh, -2.5, 2.5, rng);
      const LinearMap g = LinearMap::identity(sh, 2);
      PdConfig cfg;
      cfg.alpha = alpha;
      cfg.regularizer = Regularizer::kIsotropic;
      const auto t0 = Clock::now();
      const StepOneResult r = solve_step1(LinearMap::identity(sh), g, f, cfg);
      slowest = std::max(slowest, seconds_since(t0));
      const VectorField expect = soft_threshold_vector(g.apply(f), Threshold(alpha));
      for (std::size_t i = 0; i < f.size(); ++i)
        worst = std::max(worst, std::abs(r.u[i] - expect[i]));
    }
  }
  return {worst < 1e-3 && slowest < 1.0,
          fmt("40 solves (64 points, d=2), max linf error %.2e, slowest %.3f s",
              worst, slowest)};
}

Outcome c3_hard_threshold() {
  std::mt19937_64 rng(103);
  const PdConfig cfg = table1_adaptive();  // alpha 0.3, gamma 1000
  double worst_b = 0.0, worst_ic = 0.0;
  int unconverged = 0;
  for (int k = 0; k < 20; ++k) {
    const GridSignal f = uniform(Shape{64, 1}, -2.0, 2.0, rng);
    const LinearMap id = LinearMap::identity(f.shape());
    const StepOneResult s1 = solve_step1(id, id, f, cfg);
    const GridSignal p =
        feasible_subgradient(s1.subgradient, id, cfg.regularizer);
    const PdState wb = warm_start_from(s1, cfg, GapVariant::kBregman);
    const PdState wi = warm_start_from(s1, cfg, GapVariant::kInfimalConvolution);
    const StepTwoResult b = solve_step2_bregman(id, id, f, p, cfg, &wb);
    const StepTwoResult ic = solve_step2_icb(id, id, f, p, cfg, &wi);
    log_fidelity(id, f, s1.u, s1.report, b.u, b.report, cfg.eps2);
    log_fidelity(id, f, s1.u, s1.report, ic.u, ic.report, cfg.eps2);
    unconverged += !b.report.converged() + !ic.report.converged();
    const GridSignal h = hard_threshold(f, Threshold(cfg.alpha));
    worst_b = std::max(worst_b, max_abs_difference(b.u, h));
    worst_ic = std::max(worst_ic, max_abs_difference(ic.u, h));
  }
  return {std::max(worst_b, worst_ic) < 1e-3,
          fmt("20 signals, max linf error bregman %.2e, icb %.2e, "
              "%.0f second-step runs unconverged",
              worst_b, worst_ic, unconverged)};
}

Outcome c4_singular_vector() {
  std::mt19937_64 rng(104);
  std::vector<int> pattern(64, 0);
  std::vector<std::size_t> idx(64);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  for (int k = 0; k < 8; ++k) pattern[idx[k]] = (rng() & 1) ? 1 : -1;
  PdConfig cfg;
  cfg.alpha = 0.25;
  const SingularVectorReport r =
      run_singular_vector_experiment(2.0, 1.0, pattern, Shape{64, 1}, cfg);
  log_fidelity(LinearMap::identity(r.f.shape()), r.f, r.result.u_alpha,
               r.result.step1, *r.result.u_hat_b, *r.result.step2_b, cfg.eps2);
  log_fidelity(LinearMap::identity(r.f.shape()), r.f, r.result.u_alpha,
               r.result.step1, *r.result.u_hat_ic, *r.result.step2_ic, cfg.eps2);
  return {r.err_u_alpha < 1e-3 && r.err_u_hat_b < 1e-3 && r.err_u_hat_ic < 1e-3,
          fmt("errors u_alpha %.2e, u_hat_b %.2e, u_hat_ic %.2e", r.err_u_alpha,
              r.err_u_hat_b, r.err_u_hat_ic)};
}

// Largest |<Kx,y> - <x,K^T y>| / (||x|| ||y|| + 1) over 100 random pairs.
double adjoint_defect(const LinearMap& m, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    GridSignal x(m.domain());
    for (double& v : x.values()) v = d(rng);
    VectorField y = m.zero_codomain();
    for (double& v : y.values()) v = d(rng);
    const double lhs = inner_product(m.apply(x), y);
    const double rhs = inner_product(x, m.adjoint(y));
    worst = std::max(worst, std::abs(lhs - rhs) /
                                (norms(x).l2 * norms(y).l2 + 1.0));
  }
  return worst;
}

Outcome c5_adjoints() {
  std::mt19937_64 rng(105);
  const double g1 = adjoint_defect(LinearMap::gradient2d(Shape{5, 4}), rng);
  const double g2 = adjoint_defect(LinearMap::gradient2d(Shape{32, 32}), rng);
  const double c = adjoint_defect(
      LinearMap::convolution1d(Shape{64, 1}, gaussian_kernel(9, 2.0)), rng);
  return {std::max({g1, g2, c}) <= 1e-10,
          fmt("relative defect grad 5x4 %.1e, grad 32x32 %.1e, conv %.1e", g1,
              g2, c)};
}

Outcome c6_icb_oracle() {
  std::mt19937_64 rng(106);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 3);
  const std::size_t steps = 401;
  int bad_scalar = 0, bad_vector = 0;
  int below = 0;  // grid minimum under the closed form by more than 2 steps
  double worst_ratio = 0.0;  // |closed - brute| / grid step
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 3);
    GridSignal u(Shape{n, 1}), p(Shape{n, 1});
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = 2.0 * d(rng);
      const int m = pick(rng);
      p[i] = m == 0 ? 1.0 : (m == 1 ? -1.0 : d(rng));
    }
    const double r = 2.0 * std::max(norms(u).linf, 1e-3);
    const double h = 2.0 * r / static_cast<double>(steps - 1);
    const double signed_err = icb_l1_scalar(u, p) - icb_bruteforce(u, p, r, steps);
    const double err = std::abs(signed_err);
    below += signed_err > 2.0 * h;
    worst_ratio = std::max(worst_ratio, err / h);
    bad_scalar += err > 2.0 * h;
  }
  for (int k = 0; k < 60; ++k) {
    const std::size_t pts = 1 + static_cast<std::size_t>(k % 2);
    VectorField gu(Shape{pts, 1}, 2), q(Shape{pts, 1}, 2);
    double umax = 0.0;
    for (std::size_t i = 0; i < pts; ++i) {
      gu.component(i, 0) = 2.0 * d(rng);
      gu.component(i, 1) = 2.0 * d(rng);
      umax = std::max({umax, std::abs(gu.component(i, 0)),
                       std::abs(gu.component(i, 1))});
      const double ang = 3.14159265358979323846 * d(rng);
      const double mag = pick(rng) == 0 ? 1.0 : std::abs(d(rng));
      q.component(i, 0) = mag * std::cos(ang);
      q.component(i, 1) = mag * std::sin(ang);
    }
    const double r = 2.0 * std::max(umax, 1e-3);
    const double h = 2.0 * r / static_cast<double>(steps - 1);
    const double signed_err = icb_l1_vector(gu, q) - icb_bruteforce(gu, q, r, steps);
    const double err = std::abs(signed_err);
    below += signed_err > 2.0 * h;
    worst_ratio = std::max(worst_ratio, err / h);
    bad_vector += err > 2.0 * h;
  }
  return {bad_scalar == 0 && bad_vector == 0,
          fmt("60 scalar + 60 vector instances, %.0f + %.0f outside 2 grid steps, "
              "worst error %.2f grid steps, %.0f with grid minimum below the "
              "closed form",
              bad_scalar, bad_vector, worst_ratio, below)};
}

Outcome c7_manifolds() {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 2);
  int failures = 0, controls_failed = 0;
  const PenaltyDescriptor pen{nullptr, Regularizer::kAnisotropic};
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 8 + static_cast<std::size_t>(k % 25);
    const ManifoldTolerance tol(1e-9 * static_cast<double>(n));
    Subgradient sub;
    sub.p = GridSignal(Shape{n, 1});
    for (std::size_t i = 0; i < n; ++i) {
      const int m = pick(rng);
      sub.p[i] = m == 0 ? 1.0 : (m == 1 ? -1.0 : 0.99 * d(rng));
    }
    sub.p[0] = 1.0;   // at least one saturated entry
    sub.p[1] = 0.5;   // and one free entry
    sub.q = VectorField::from_signal(sub.p);
    sub.alpha = 1.0;
    const auto saturated = [&](std::size_t i) { return std::abs(sub.p[i]) == 1.0; };
    // Elements of M^B: nonnegative multiples of p on the saturated set.
    const auto draw_b = [&]() {
      GridSignal u(Shape{n, 1});
      for (std::size_t i = 0; i < n; ++i)
        if (saturated(i)) u[i] = std::abs(d(rng)) * sub.p[i];
      return u;
    };
    // Elements of M^IC: anything supported on the saturated set.
    const auto draw_ic = [&]() {
      GridSignal u(Shape{n, 1});
      for (std::size_t i = 0; i < n; ++i)
        if (saturated(i)) u[i] = 3.0 * d(rng);
      return u;
    };
    const GridSignal u_alpha = draw_b();
    const auto in = [&](ManifoldKind kind, const GridSignal& u) {
      return membership(kind, u, u_alpha, sub, pen, tol).inside;
    };

    const GridSignal ub = draw_b();
    const double c = 10.0 * std::abs(d(rng));
    failures += !in(ManifoldKind::kBregman, c * ub);         // cone
    failures += !in(ManifoldKind::kInfimalConvolution, ub);  // inclusion
    const GridSignal u = draw_ic(), v = draw_ic();
    const double a = 5.0 * d(rng), b = 5.0 * d(rng);
    failures += !in(ManifoldKind::kInfimalConvolution, a * u + b * v);  // subspace

    // Controls: a sign flip on the saturated set leaves M^B but not M^IC;
    // mass on a free entry leaves both.
    GridSignal flip(Shape{n, 1});
    flip[0] = -1.0;
    controls_failed += in(ManifoldKind::kBregman, flip);
    controls_failed += !in(ManifoldKind::kInfimalConvolution, flip);
    GridSignal off(Shape{n, 1});
    off[1] = 1.0;
    controls_failed += in(ManifoldKind::kBregman, off);
    controls_failed += in(ManifoldKind::kInfimalConvolution, off);
  }
  return {failures == 0 && controls_failed == 0,
          fmt("100 instances x 3 properties: %.0f failures; %.0f negative "
              "controls misclassified",
              failures, controls_failed)};
}

struct CartoonRun {
  GridSignal truth;
  GridSignal f;
  LinearMap a;
  LinearMap g;
};

CartoonRun cartoon(Seed noise_seed) {
  const ExperimentConfig e = ExperimentConfig::table1();
  GridSignal truth = make_phantom(e.phantom);
  GridSignal f = add_gaussian_noise(truth, e.noise_std, noise_seed);
  return {truth, f, LinearMap::identity(truth.shape()),
          LinearMap::gradient2d(truth.shape())};
}

Outcome c8_convergence() {
  const auto t0 = Clock::now();
  const PdConfig cfg = table1_adaptive();
  const CartoonRun cr = cartoon(Seed{1});
  const DebiasResult r = two_step_logged(cr.a, cr.g, cr.f, cfg, DebiasMethod::kBoth);
  const double secs = seconds_since(t0);
  const SolveReport &s1 = r.step1, &sb = *r.step2_b, &si = *r.step2_ic;
  const bool conv =
      s1.converged() && sb.converged() && si.converged() &&
      std::abs(s1.final_gap) < cfg.eps1 && std::abs(sb.final_gap) < cfg.eps1 &&
      std::abs(si.final_gap) < cfg.eps1 && sb.residual2 < cfg.eps2 &&
      si.residual2 < cfg.eps2 && si.residual3 < cfg.eps3;
  const double n = static_cast<double>(cr.f.size());
  const double feas = penalty_value(cr.g.apply(*r.u_hat_b), cfg.regularizer) -
                      inner_product(r.p_alpha.p, *r.u_hat_b);
  const bool pass = conv && feas <= 10.0 * n * cfg.eps2 && secs < 60.0;
  return {pass,
          fmt("iterations %.0f / %.0f / %.0f", s1.iterations, sb.iterations,
              si.iterations) +
              fmt(", gaps %.1e / %.1e / %.1e", std::abs(s1.final_gap),
                  std::abs(sb.final_gap), std::abs(si.final_gap)) +
              fmt(", J(u_b) - <p_alpha,u_b> = %.2e (bound %.2e), %.1f s", feas,
                  10.0 * n * cfg.eps2, secs)};
}

Outcome c9_psnr_gain() {
  const PdConfig cfg = table1_adaptive();
  double min_gain_b = 1e9, min_gain_ic = 1e9;
  std::string per_seed;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const CartoonRun cr = cartoon(Seed{s});
    const DebiasResult r = two_step_logged(cr.a, cr.g, cr.f, cfg, DebiasMethod::kBoth);
    const double pu = psnr(r.u_alpha, cr.truth).db;
    const double pb = psnr(*r.u_hat_b, cr.truth).db;
    const double pi = psnr(*r.u_hat_ic, cr.truth).db;
    min_gain_b = std::min(min_gain_b, pb - pu);
    min_gain_ic = std::min(min_gain_ic, pi - pu);
    per_seed += fmt(" [%.2f %.2f %.2f]", pu, pb, pi);
  }
  return {min_gain_b >= 1.0 && min_gain_ic >= 1.0,
          fmt("min gain bregman %.2f dB, icb %.2f dB; PSNR u_alpha/u_b/u_ic:",
              min_gain_b, min_gain_ic) +
              per_seed};
}

Outcome c10_bias_variance() {
  const auto t0 = Clock::now();
  const ExperimentConfig e = ExperimentConfig::deconvolution();
  const GridSignal truth = make_phantom(e.phantom);
  const LinearMap a = LinearMap::convolution1d(truth.shape(), parse_kernel(e.kernel));
  const LinearMap g = LinearMap::identity(truth.shape());
  const VectorField af = a.apply(truth);
  const GridSignal f_star(truth.shape(),
                          std::vector<double>(af.values().begin(), af.values().end()));
  const std::vector<double> alphas = parse_alpha_range(e.alphas);

  std::vector<BiasReport> first, second;
  for (double alpha : alphas) {
    PdConfig cfg = e.pd;
    cfg.alpha = alpha;
    const Estimator step1 = [&](const GridSignal& f) {
      return solve_step1(a, g, f, cfg).u;
    };
    const Estimator debiased = [&](const GridSignal& f) {
      return *two_step_logged(a, g, f, cfg, DebiasMethod::kBregman).u_hat_b;
    };
    MonteCarloOptions mo;
    mo.realizations = 200;
    mo.base_seed = e.mc_seed;
    first.push_back(monte_carlo_bias_variance(step1, truth, f_star, e.noise_std, mo));
    second.push_back(
        monte_carlo_bias_variance(debiased, truth, f_star, e.noise_std, mo));
  }
  const double secs = seconds_since(t0);
  // Mid-grid: every alpha except the two end points.
  bool below = true;
  std::string curve;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (i > 0 && i + 1 < alphas.size())
      below = below && second[i].statistical_bias_rms < first[i].statistical_bias_rms;
    curve += fmt(" %.3g:%.4f/%.4f", alphas[i], first[i].statistical_bias_rms,
                 second[i].statistical_bias_rms);
  }
  const bool var_ok = second[0].mean_variance >= first[0].mean_variance;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < alphas.size(); ++i)
    failures += first[i].failures + second[i].failures;
  return {below && var_ok && secs < 300.0,
          fmt("variance at smallest alpha %.4f (step 1) vs %.4f (debiased), "
              "%.0f failed realizations, %.1f s; bias rms step1/debiased:",
              first[0].mean_variance, second[0].mean_variance, failures, secs) +
              curve};
}

Outcome c11_bregman_iterations() {
  const PdConfig cfg = table1_adaptive();
  const ExperimentConfig e = ExperimentConfig::table1();
  const CartoonRun cr = cartoon(Seed{1});
  const BregmanTrace t = run_bregman_iterations(cr.a, cr.g, cr.f, cfg.alpha,
                                                kDefaultBregmanSteps,
                                                e.noise_std, cfg);
  const StepOneResult s1 = solve_step1(cr.a, cr.g, cr.f, cfg);
  const double first_err = max_abs_difference(t.iterates.front().u, s1.u);
  const DebiasResult r = two_step_logged(cr.a, cr.g, cr.f, cfg, DebiasMethod::kBregman);
  const double p_breg = psnr(t.iterates.back().u, cr.truth).db;
  const double p_u = psnr(r.u_alpha, cr.truth).db;
  const double p_b = psnr(*r.u_hat_b, cr.truth).db;
  return {first_err <= 1e-8 && p_breg >= p_u && std::abs(p_breg - p_b) <= 1.5,
          fmt("first iterate vs step 1 %.1e; stopped after %.0f iterates; ",
              first_err, static_cast<double>(t.iterates.size())) +
              fmt("PSNR bregman-iter %.2f, u_alpha %.2f, u_b %.2f", p_breg, p_u,
                  p_b)};
}

Outcome c12_fidelity() {
  std::size_t violations = 0;
  double worst = -1e300;
  for (const FidelityEntry& e : g_fidelity) {
    const double excess = e.residual_hat - e.residual_alpha - e.slack;
    worst = std::max(worst, excess);
    violations += excess > 0.0;
  }
  return {violations == 0 && !g_fidelity.empty(),
          fmt("%.0f converged second-step runs checked, %.0f violations, "
              "max excess over bound %.2e; %.0f unconverged runs skipped",
              static_cast<double>(g_fidelity.size()),
              static_cast<double>(violations), worst,
              static_cast<double>(g_unconverged_two_step))};
}

}  // namespace
}  // namespace debias

int main() {
  using namespace debias;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "shrinkage oracle", c1_shrinkage},
      {2, "isotropic shrinkage oracle", c2_isotropic},
      {3, "hard-threshold debiasing", c3_hard_threshold},
      {4, "singular-vector exactness", c4_singular_vector},
      {5, "adjointness", c5_adjoints},
      {6, "ICB oracle equivalence", c6_icb_oracle},
      {7, "manifold structure", c7_manifolds},
      {8, "convergence discipline", c8_convergence},
      {9, "debiasing improves PSNR", c9_psnr_gain},
      {10, "bias-variance shape", c10_bias_variance},
      {11, "Bregman-iteration cross-check", c11_bregman_iterations},
      {12, "fidelity dominance", c12_fidelity},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    std::printf("%s criterion %2d  %-30s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL",
                c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
