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

#include "debias/bregman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "debias/proximal.hpp"

namespace debias {

std::string to_string(Regularizer r) {
  return r == Regularizer::kAnisotropic ? "aniso" : "iso";
}

Regularizer parse_regularizer(const std::string& text) {
  if (text == "aniso" || text == "anisotropic") return Regularizer::kAnisotropic;
  if (text == "iso" || text == "isotropic") return Regularizer::kIsotropic;
  throw ContractViolation("unknown regularizer '" + text +
                          "' (expected aniso or iso)");
}

double penalty_value(const VectorField& gu, Regularizer r) {
  if (r == Regularizer::kIsotropic) return norms(gu).l1;
  double s = 0.0;
  for (double v : gu.values()) s += std::abs(v);
  return s;
}

Subgradient subgradient_from_optimality(const LinearMap& a,
                                        const LinearMap& gamma,
                                        const GridSignal& f,
                                        const GridSignal& u_alpha,
                                        double alpha) {
  require(alpha > 0.0 && std::isfinite(alpha),
          "subgradient_from_optimality: alpha must be > 0");
  require(u_alpha.shape() == a.domain(),
          "subgradient_from_optimality: u_alpha does not match A's domain");
  require(f.shape() == a.codomain_grid() && a.codomain_dim() == 1,
          "subgradient_from_optimality: f does not match A's codomain");
  VectorField w = a.apply(u_alpha);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = (f[i] - w[i]) / alpha;
  Subgradient sub;
  sub.p = a.adjoint(w);
  sub.w = std::move(w);
  sub.alpha = alpha;
  if (gamma.is_identity() && gamma.domain() == a.domain())
    sub.q = gamma.apply(sub.p);
  return sub;
}

GridSignal feasible_subgradient(const Subgradient& sub, const LinearMap& gamma,
                                Regularizer r) {
  require(sub.q.has_value(), "feasible_subgradient: subgradient has no q");
  require(sub.q->same_layout(gamma.zero_codomain()),
          "feasible_subgradient: q does not match Gamma's codomain");
  VectorField q = *sub.q;
  if (r == Regularizer::kIsotropic) {
    disk_project_in_place(q, 1.0);
  } else {
    clamp_in_place(q, 1.0);
  }
  return gamma.adjoint(q);
}

double bregman_dist_one_homogeneous(double j_u, double p_dot_u) {
  return j_u - p_dot_u;
}

double icb_l1_scalar(const GridSignal& u, const GridSignal& p) {
  require(u.shape() == p.shape(), "icb_l1_scalar: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double ap = std::abs(p[i]);
    require(ap <= 1.0 + kUnitBallSlack,
            "icb_l1_scalar: |p_i| exceeds 1 at index " + std::to_string(i));
    s += (1.0 - std::min(ap, 1.0)) * std::abs(u[i]);
  }
  return s;
}

namespace {

double icb_point(std::span<const double> u, std::span<const double> q) {
  double uu = 0.0;
  double qq = 0.0;
  double uq = 0.0;
  for (std::size_t c = 0; c < u.size(); ++c) {
    uu += u[c] * u[c];
    qq += q[c] * q[c];
    uq += u[c] * q[c];
  }
  const double nu = std::sqrt(uu);
  const double nq = std::min(std::sqrt(qq), 1.0);
  if (nu == 0.0) return 0.0;
  double cos_phi = 1.0;
  if (nq > 0.0) cos_phi = std::clamp(uq / (nu * std::sqrt(qq)), -1.0, 1.0);
  const double abs_cos = std::abs(cos_phi);
  if (nq < abs_cos) return nu * (1.0 - abs_cos * nq);
  const double sin_phi = std::sqrt(std::max(0.0, 1.0 - cos_phi * cos_phi));
  return nu * sin_phi * std::sqrt(std::max(0.0, 1.0 - nq * nq));
}

}  // namespace

double icb_l1_vector(const VectorField& gu, const VectorField& q) {
  require(gu.same_layout(q), "icb_l1_vector: layout mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < gu.point_count(); ++i) {
    require(q.magnitude(i) <= 1.0 + kUnitBallSlack,
            "icb_l1_vector: |q_i| exceeds 1 at point " + std::to_string(i));
    s += icb_point(gu.point(i), q.point(i));
  }
  return s;
}

namespace {

void check_budget(std::size_t points, std::size_t steps, std::size_t dim) {
  require(steps >= 2, "icb_bruteforce: need at least 2 grid steps");
  double evals = static_cast<double>(points);
  for (std::size_t c = 0; c < dim; ++c) evals *= static_cast<double>(steps);
  require(evals <= static_cast<double>(kBruteForceBudget),
          "icb_bruteforce: " + std::to_string(static_cast<long long>(evals)) +
              " evaluations exceed the budget of " +
              std::to_string(kBruteForceBudget));
}

}  // namespace

double icb_bruteforce(const GridSignal& u, const GridSignal& p,
                      double grid_radius, std::size_t grid_steps) {
  require(u.shape() == p.shape(), "icb_bruteforce: shape mismatch");
  require(grid_radius >= 0.0, "icb_bruteforce: negative radius");
  check_budget(u.size(), grid_steps, 1);
  const double h = 2.0 * grid_radius / static_cast<double>(grid_steps - 1);
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid_steps; ++k) {
      const double z = -grid_radius + h * static_cast<double>(k);
      const double v = u[i] - z;
      const double val = std::abs(v) - p[i] * v + std::abs(z) + p[i] * z;
      best = std::min(best, val);
    }
    total += best;
  }
  return total;
}

double icb_bruteforce(const VectorField& u, const VectorField& q,
                      double grid_radius, std::size_t grid_steps) {
  require(u.same_layout(q), "icb_bruteforce: layout mismatch");
  require(grid_radius >= 0.0, "icb_bruteforce: negative radius");
  require(u.dim() <= 3, "icb_bruteforce: at most 3 components");
  check_budget(u.point_count(), grid_steps, u.dim());
  const std::size_t d = u.dim();
  const double h = 2.0 * grid_radius / static_cast<double>(grid_steps - 1);
  std::size_t cells = 1;
  for (std::size_t c = 0; c < d; ++c) cells *= grid_steps;
  double total = 0.0;
  std::vector<double> z(d);
  for (std::size_t i = 0; i < u.point_count(); ++i) {
    const auto ui = u.point(i);
    const auto qi = q.point(i);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t cell = 0; cell < cells; ++cell) {
      std::size_t rem = cell;
      for (std::size_t c = 0; c < d; ++c) {
        z[c] = -grid_radius + h * static_cast<double>(rem % grid_steps);
        rem /= grid_steps;
      }
      double nz = 0.0;
      double nv = 0.0;
      double qv = 0.0;
      double qz = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double v = ui[c] - z[c];
        nz += z[c] * z[c];
        nv += v * v;
        qv += qi[c] * v;
        qz += qi[c] * z[c];
      }
      best = std::min(best, std::sqrt(nv) - qv + std::sqrt(nz) + qz);
    }
    total += best;
  }
  return total;
}

std::string to_string(ManifoldKind kind) {
  return kind == ManifoldKind::kBregman ? "MB" : "MIC";
}

ManifoldTolerance::ManifoldTolerance(double value) : tol(value) {
  require(value >= 0.0 && std::isfinite(value),
          "ManifoldTolerance must be finite and nonnegative");
}

ManifoldTolerance ManifoldTolerance::default_for(std::size_t entries) {
  return ManifoldTolerance(1e-6 * static_cast<double>(entries));
}

namespace {

GridSignal flatten(const VectorField& v) {
  return GridSignal(Shape{v.size(), 1},
                    std::vector<double>(v.values().begin(), v.values().end()));
}

constexpr double kSaturated = 1.0 - 1e-6;
constexpr double kZeroEntry = 1e-8;

}  // namespace

MembershipReport membership(ManifoldKind kind, const GridSignal& u,
                            const GridSignal& u_alpha, const Subgradient& sub,
                            const PenaltyDescriptor& penalty,
                            ManifoldTolerance tol) {
  require(u.shape() == sub.p.shape() && u_alpha.shape() == u.shape(),
          "membership: u, u_alpha and p must share a shape");
  const LinearMap* gamma = penalty.gamma;
  if (gamma != nullptr) {
    require(gamma->domain() == u.shape(),
            "membership: Gamma domain does not match u");
    if (gamma->kind() == MapKind::kConvolution1d)
      throw ContractViolation(
          "membership: unsupported penalty (Gamma must be identity or "
          "gradient2d)");
  }
  const bool identity = gamma == nullptr || gamma->is_identity();
  const LinearMap fallback = LinearMap::identity(u.shape());
  const LinearMap& g = gamma != nullptr ? *gamma : fallback;

  const VectorField gu = g.apply(u);
  const VectorField gu_alpha = g.apply(u_alpha);
  MembershipReport report;

  std::optional<VectorField> q;
  if (identity) {
    q = g.apply(sub.p);
  } else if (sub.q.has_value()) {
    require(sub.q->same_layout(gu), "membership: q does not match Gamma u");
    q = sub.q;
  }

  if (kind == ManifoldKind::kBregman) {
    report.distance = bregman_dist_one_homogeneous(
        penalty_value(gu, penalty.regularizer), inner_product(sub.p, u));
  } else {
    if (!q.has_value())
      throw ContractViolation(
          "membership: MIC test on Gamma u needs a subgradient factor q");
    if (penalty.regularizer == Regularizer::kAnisotropic) {
      report.distance = icb_l1_scalar(flatten(gu), flatten(*q));
    } else {
      report.distance = icb_l1_vector(gu, *q);
    }
    if (!identity) {
      report.necessary_only = true;
      report.note =
          "ICB evaluated on Gamma u; zero is a necessary condition only";
    }
  }

  if (q.has_value()) {
    if (penalty.regularizer == Regularizer::kAnisotropic) {
      for (std::size_t i = 0; i < q->size(); ++i)
        if (std::abs((*q)[i]) >= kSaturated &&
            std::abs(gu_alpha[i]) <= kZeroEntry)
          ++report.qualification_mismatches;
    } else {
      for (std::size_t i = 0; i < q->point_count(); ++i)
        if (q->magnitude(i) >= kSaturated &&
            gu_alpha.magnitude(i) <= kZeroEntry)
          ++report.qualification_mismatches;
    }
  }
  report.inside = report.distance <= tol.tol;
  return report;
}

}  // namespace debias
