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

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>

#include "cli.hpp"
#include "debias/bregman.hpp"
#include "debias/io.hpp"
#include "debias/pipeline.hpp"
#include "debias/proximal.hpp"
#include "debias/solver.hpp"

namespace debias::cli {

namespace {

std::string fmt(const char* label, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s=%.3g", label, v);
  return buf;
}

// Values uniform in [-1.5, 1.5], kept out of a band around +-alpha so the
// thresholding decisions are unambiguous for an iterative solver.
GridSignal random_data(std::size_t n, double alpha, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  std::vector<double> v(n);
  for (double& x : v) {
    do {
      x = d(rng);
    } while (std::abs(std::abs(x) - alpha) < 0.05);
  }
  return GridSignal(Shape{n, 1}, v);
}

SelftestCase soft_threshold_case() {
  std::mt19937_64 rng(11);
  const double alpha = 0.3;
  const GridSignal f = random_data(32, alpha, rng);
  const LinearMap id = LinearMap::identity(f.shape());
  PdConfig cfg;
  cfg.alpha = alpha;
  const StepOneResult r = solve_step1(id, id, f, cfg);
  const double err =
      max_abs_difference(r.u, soft_threshold_scalar(f, Threshold(alpha)));
  return {"l1 denoising matches soft thresholding",
          r.report.converged() && err < 1e-3, fmt("max_err", err)};
}

SelftestCase hard_threshold_case() {
  std::mt19937_64 rng(12);
  const double alpha = 0.3;
  const GridSignal f = random_data(32, alpha, rng);
  const LinearMap id = LinearMap::identity(f.shape());
  PdConfig cfg;
  cfg.alpha = alpha;
  const DebiasResult r = run_two_step(id, id, f, cfg, DebiasMethod::kBoth);
  const GridSignal h = hard_threshold(f, Threshold(alpha));
  const double eb = max_abs_difference(*r.u_hat_b, h);
  const double ei = max_abs_difference(*r.u_hat_ic, h);
  return {"l1 debiasing matches hard thresholding",
          std::max(eb, ei) < 1e-2 && r.step2_b->converged() &&
              r.step2_ic->converged(),
          fmt("err_b", eb) + " " + fmt("err_ic", ei)};
}

double adjoint_mismatch(const LinearMap& m, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  GridSignal x(m.domain());
  for (double& v : x.values()) v = d(rng);
  VectorField y = m.zero_codomain();
  for (double& v : y.values()) v = d(rng);
  const double lhs = inner_product(m.apply(x), y);
  const double rhs = inner_product(x, m.adjoint(y));
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

SelftestCase adjoint_case() {
  std::mt19937_64 rng(13);
  const double g = adjoint_mismatch(LinearMap::gradient2d(Shape{9, 7}), rng);
  const double c = adjoint_mismatch(
      LinearMap::convolution1d(Shape{40, 1}, gaussian_kernel(9, 2.0)), rng);
  return {"operator adjoints", std::max(g, c) < 1e-12,
          fmt("grad", g) + " " + fmt("conv", c)};
}

SelftestCase icb_case() {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> du(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> u(6), p(6);
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = du(rng);
      p[i] = du(rng);
    }
    const GridSignal us(Shape{6, 1}, u), ps(Shape{6, 1}, p);
    const double closed = icb_l1_scalar(us, ps);
    const double brute = icb_bruteforce(us, ps, 2.0, 401);
    worst = std::max(worst, std::abs(closed - brute));
  }
  return {"ICB closed form against brute force", worst < 1e-2,
          fmt("max_err", worst)};
}

SelftestCase singular_vector_case() {
  PdConfig cfg;
  cfg.alpha = 0.25;
  std::vector<int> pattern(64, 0);
  for (int i = 0; i < 8; ++i) pattern[static_cast<std::size_t>(i * 8)] = i % 2 ? -1 : 1;
  const SingularVectorReport r =
      run_singular_vector_experiment(2.0, 1.0, pattern, Shape{64, 1}, cfg);
  const double e = std::max({r.err_u_alpha, r.err_u_hat_b, r.err_u_hat_ic});
  return {"singular vector contrast loss and recovery", e < 1e-3,
          fmt("max_err", e)};
}

SelftestCase file_roundtrip_case() {
  const GridSignal img = make_phantom(Phantom{PhantomKind::kCartoon2d, 16});
  const GridSignal back = parse_pgm(format_pgm(img));
  const double pgm_err = max_abs_difference(img, back);
  const GridSignal sig = make_phantom(Phantom{PhantomKind::kSpikes1d, 40});
  const double csv_err =
      max_abs_difference(sig, parse_signal_csv(format_signal_csv(sig)));
  const ExperimentConfig cfg = ExperimentConfig::deconvolution();
  const bool cfg_ok = parse_config(serialize_config(cfg)) == cfg;
  return {"PGM, CSV and config round trips",
          pgm_err <= 0.5 / 255.0 + 1e-12 && csv_err == 0.0 && cfg_ok,
          fmt("pgm_err", pgm_err) + " " + fmt("csv_err", csv_err)};
}

}  // namespace

std::vector<SelftestCase> run_selftest() {
  const std::vector<std::function<SelftestCase()>> cases = {
      soft_threshold_case, hard_threshold_case, adjoint_case,
      icb_case,            singular_vector_case, file_roundtrip_case};
  std::vector<SelftestCase> out;
  for (const auto& c : cases) {
    try {
      out.push_back(c());
    } catch (const std::exception& e) {
      out.push_back({"(threw)", false, e.what()});
    }
  }
  return out;
}

}  // namespace debias::cli
