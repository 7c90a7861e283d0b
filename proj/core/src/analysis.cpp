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

#include "debias/analysis.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include "debias/bregman.hpp"

namespace debias {

Psnr psnr(const GridSignal& u, const GridSignal& reference, double peak) {
  require(u.shape() == reference.shape(), "psnr: shape mismatch");
  require(peak > 0.0 && std::isfinite(peak), "psnr: peak must be > 0");
  double sse = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - reference[i];
    sse += d * d;
  }
  if (sse == 0.0) return {std::numeric_limits<double>::infinity(), true};
  const double mse = sse / static_cast<double>(u.size());
  return {10.0 * std::log10(peak * peak / mse), false};
}

GridSignal add_gaussian_noise(const GridSignal& u, double stddev, Seed seed) {
  require(stddev >= 0.0 && std::isfinite(stddev),
          "add_gaussian_noise: std must be finite and >= 0");
  GridSignal out = u;
  if (stddev == 0.0) return out;
  std::mt19937_64 rng(seed.value);
  std::normal_distribution<double> dist(0.0, stddev);
  for (double& v : out.values()) v += dist(rng);
  return out;
}

namespace {

double rms(const GridSignal& x) {
  return norms(x).l2 / std::sqrt(static_cast<double>(x.size()));
}

std::optional<GridSignal> run_guarded(const Estimator& est,
                                      const GridSignal& f) {
  try {
    GridSignal u = est(f);
    if (u.shape() != f.shape() || !u.all_finite()) return std::nullopt;
    return u;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

BiasReport monte_carlo_bias_variance(const Estimator& estimator,
                                     const GridSignal& u_star,
                                     const GridSignal& f_star,
                                     double noise_std,
                                     const MonteCarloOptions& opts) {
  require(opts.realizations >= 2,
          "monte_carlo_bias_variance: need at least 2 realizations");
  require(noise_std >= 0.0 && std::isfinite(noise_std),
          "monte_carlo_bias_variance: noise std must be >= 0");

  const std::size_t count = opts.realizations;
  std::vector<std::optional<GridSignal>> results(count);
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t i = next++; i < count; i = next++) {
      const GridSignal f =
          add_gaussian_noise(f_star, noise_std, Seed{opts.base_seed.value + i});
      results[i] = run_guarded(estimator, f);
    }
  };
  const unsigned threads =
      std::max(1u, std::min<unsigned>(opts.threads,
                                      static_cast<unsigned>(count)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  BiasReport rep;
  const Shape shape = u_star.shape();
  GridSignal sum(shape);
  for (std::size_t i = 0; i < count; ++i) {
    if (!results[i].has_value() || results[i]->shape() != shape) {
      rep.failed_indices.push_back(i);
      continue;
    }
    sum += *results[i];
    ++rep.n_realizations;
  }
  rep.failures = rep.failed_indices.size();
  require(rep.n_realizations >= 2,
          "monte_carlo_bias_variance: fewer than 2 successful realizations");

  const double inv = 1.0 / static_cast<double>(rep.n_realizations);
  rep.mean_estimate = inv * sum;
  GridSignal ss(shape);
  for (std::size_t i = 0; i < count; ++i) {
    if (!results[i].has_value() || results[i]->shape() != shape) continue;
    for (std::size_t j = 0; j < ss.size(); ++j) {
      const double d = (*results[i])[j] - rep.mean_estimate[j];
      ss[j] += d * d;
    }
  }
  rep.variance = (1.0 / static_cast<double>(rep.n_realizations - 1)) * ss;
  rep.statistical_bias = u_star - rep.mean_estimate;

  const GridSignal clean = estimator(f_star);
  rep.deterministic_bias = u_star - clean;
  if (opts.first_step != nullptr) {
    const GridSignal first = (*opts.first_step)(f_star);
    rep.model_bias = rep.deterministic_bias;
    rep.method_bias = clean - first;
    rep.model_bias_rms = rms(*rep.model_bias);
    rep.method_bias_rms = rms(*rep.method_bias);
  }

  rep.statistical_bias_rms = rms(rep.statistical_bias);
  rep.deterministic_bias_rms = rms(rep.deterministic_bias);
  double mv = 0.0;
  for (double v : rep.variance.values()) mv += v;
  rep.mean_variance = mv / static_cast<double>(rep.variance.size());
  rep.std_dev_rms = std::sqrt(rep.mean_variance);
  return rep;
}

namespace {

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

double psnr_or_nan(const GridSignal& u, const std::optional<GridSignal>& t) {
  if (!t.has_value()) return std::numeric_limits<double>::quiet_NaN();
  return psnr(u, *t).db;
}

}  // namespace

SweepCurve sweep_regularization(const SweepProblem& problem,
                                const std::vector<double>& alphas,
                                const PdConfig& cfg, DebiasMethod which,
                                const std::optional<SweepMonteCarlo>& mc) {
  require(!alphas.empty(), "sweep_regularization: empty alpha list");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    require(alphas[i] > 0.0 && std::isfinite(alphas[i]),
            "sweep_regularization: alphas must be positive");
    if (i > 0)
      require(alphas[i] > alphas[i - 1],
              "sweep_regularization: alphas must be strictly increasing");
  }
  if (problem.truth.has_value())
    require(problem.truth->shape() == problem.a.domain(),
            "sweep_regularization: truth does not match the domain");

  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  SweepCurve curve;
  for (double alpha : alphas) {
    SweepRow row;
    row.alpha = alpha;
    row.psnr_ub = row.psnr_uic = kNaN;
    row.tv_ub = row.residual_ub = row.tv_uic = row.residual_uic = kNaN;
    row.bias_u = row.bias_ub = row.std_u = row.std_ub = kNaN;
    PdConfig c = cfg;
    c.alpha = alpha;
    try {
      const DebiasResult r =
          run_two_step(problem.a, problem.gamma, problem.f, c, which);
      row.tv_u = penalty_value(problem.gamma.apply(r.u_alpha), c.regularizer);
      row.residual_u = half_residual(problem.a, r.u_alpha, problem.f);
      row.psnr_u = psnr_or_nan(r.u_alpha, problem.truth);
      bool ok = r.step1.converged();
      if (r.u_hat_b) {
        row.tv_ub = penalty_value(problem.gamma.apply(*r.u_hat_b),
                                  c.regularizer);
        row.residual_ub = half_residual(problem.a, *r.u_hat_b, problem.f);
        row.psnr_ub = psnr_or_nan(*r.u_hat_b, problem.truth);
        ok = ok && r.step2_b->converged();
      }
      if (r.u_hat_ic) {
        row.tv_uic = penalty_value(problem.gamma.apply(*r.u_hat_ic),
                                   c.regularizer);
        row.residual_uic = half_residual(problem.a, *r.u_hat_ic, problem.f);
        row.psnr_uic = psnr_or_nan(*r.u_hat_ic, problem.truth);
        ok = ok && r.step2_ic->converged();
      }
      if (!ok) {
        row.complete = false;
        row.error = "solver did not converge";
      }
      if (mc.has_value()) {
        const DebiasMethod debias =
            which == DebiasMethod::kIcb ? DebiasMethod::kIcb
                                        : DebiasMethod::kBregman;
        const Estimator first = [&](const GridSignal& f) {
          return solve_step1(problem.a, problem.gamma, f, c).u;
        };
        const Estimator second = [&](const GridSignal& f) {
          DebiasResult d = run_two_step(problem.a, problem.gamma, f, c, debias);
          return debias == DebiasMethod::kIcb ? *d.u_hat_ic : *d.u_hat_b;
        };
        MonteCarloOptions mo;
        mo.realizations = mc->realizations;
        mo.base_seed = mc->base_seed;
        mo.threads = mc->threads;
        const BiasReport b1 = monte_carlo_bias_variance(
            first, mc->u_star, mc->f_star, mc->noise_std, mo);
        const BiasReport b2 = monte_carlo_bias_variance(
            second, mc->u_star, mc->f_star, mc->noise_std, mo);
        row.bias_u = b1.statistical_bias_rms;
        row.std_u = b1.std_dev_rms;
        row.bias_ub = b2.statistical_bias_rms;
        row.std_ub = b2.std_dev_rms;
        if (b1.failures + b2.failures > 0) {
          row.complete = false;
          row.error = "Monte-Carlo realizations failed";
        }
      }
    } catch (const std::exception& e) {
      row.complete = false;
      row.error = e.what();
    }
    curve.rows.push_back(std::move(row));
  }
  return curve;
}

namespace {

double parse_double(std::string_view s, const std::string& what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  require(res.ec == std::errc() && res.ptr == end && std::isfinite(v),
          "parse_alpha_range: bad " + what + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::vector<double> parse_alpha_range(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  require(c1 != std::string::npos && c2 != std::string::npos &&
              text.find(':', c2 + 1) == std::string::npos,
          "parse_alpha_range: expected start:stop:count, got '" + text + "'");
  const std::string_view sv(text);
  const double start = parse_double(sv.substr(0, c1), "start");
  const double stop = parse_double(sv.substr(c1 + 1, c2 - c1 - 1), "stop");
  const double count_d = parse_double(sv.substr(c2 + 1), "count");
  require(count_d >= 1.0 && count_d == std::floor(count_d) && count_d < 1e7,
          "parse_alpha_range: count must be a positive integer");
  const auto count = static_cast<std::size_t>(count_d);
  require(start > 0.0, "parse_alpha_range: start must be > 0");
  if (count == 1) return {start};
  require(stop > start, "parse_alpha_range: stop must exceed start");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = start + (stop - start) * static_cast<double>(i) /
                         static_cast<double>(count - 1);
  out.back() = stop;
  return out;
}

}  // namespace debias
