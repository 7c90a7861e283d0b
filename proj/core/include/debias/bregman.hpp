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

#ifndef DEBIAS_BREGMAN_HPP_
#define DEBIAS_BREGMAN_HPP_

#include <cstddef>
#include <optional>
#include <string>

#include "debias/core.hpp"
#include "debias/operators.hpp"

// Bregman distances and infimal convolutions of Bregman distances (ICB) for
// absolutely one-homogeneous l1-type penalties J(u) = ||Gamma u||_1, plus the
// model-manifold membership tests built on them.
namespace debias {

// How the l1 norm groups the entries of Gamma u.
enum class Regularizer {
  kAnisotropic,  // sum over every component
  kIsotropic,    // sum of pointwise Euclidean magnitudes
};

std::string to_string(Regularizer r);
Regularizer parse_regularizer(const std::string& text);

// J evaluated on an already transformed field Gamma u.
double penalty_value(const VectorField& gu, Regularizer r);

struct Subgradient {
  // p lives in u-space; it is the unique subgradient singled out by the
  // optimality condition of the first step.
  GridSignal p;
  // Factor with p ~ Gamma^T q, in Gamma u-space. Present for Gamma =
  // identity (q = p) or when a solver supplies its dual certificate.
  std::optional<VectorField> q;
  // (f - A u_alpha) / alpha in data space.
  VectorField w;
  double alpha = 0.0;
  bool q_from_dual = false;
};

// p = A^T (f - A u_alpha) / alpha. `gamma` only decides whether q = p can be
// exposed.
Subgradient subgradient_from_optimality(const LinearMap& a,
                                        const LinearMap& gamma,
                                        const GridSignal& f,
                                        const GridSignal& u_alpha,
                                        double alpha);

// Gamma^T P(q) with P the projection onto the unit ball of the dual norm:
// the nearest element of the subdifferential range to p along the q factor.
// Step 2 uses it because a p slightly outside the ball makes the ICB problem
// unbounded in z. Requires sub.q.
GridSignal feasible_subgradient(const Subgradient& sub, const LinearMap& gamma,
                                Regularizer r);

// D = J(u) - <p, u>; a Bregman distance whenever p is a subgradient of J at
// some point.
double bregman_dist_one_homogeneous(double j_u, double p_dot_u);

inline constexpr double kUnitBallSlack = 1e-9;

// sum_i (1 - |p_i|) |u_i|.
double icb_l1_scalar(const GridSignal& u, const GridSignal& p);

// sum_i G(u_i, q_i) for the isotropic l1 norm, with phi_i the angle between
// u_i and q_i (phi_i := 0 when either vanishes):
//   G = |u_i| (1 - |cos phi_i| |q_i|)            if |q_i| < |cos phi_i|
//   G = |u_i| |sin phi_i| sqrt(1 - |q_i|^2)      otherwise.
double icb_l1_vector(const VectorField& gu, const VectorField& q);

inline constexpr std::size_t kBruteForceBudget = 1'000'000;

// inf_z D^p(u - z) + D^{-p}(z) by exhaustive search of every z_i over a
// uniform grid on [-radius, radius]^d with `steps` nodes per axis. The
// objective is separable over points, so each point is searched on its own.
// Test oracle only; refuses work beyond kBruteForceBudget evaluations.
double icb_bruteforce(const GridSignal& u, const GridSignal& p,
                      double grid_radius, std::size_t grid_steps);
double icb_bruteforce(const VectorField& u, const VectorField& q,
                      double grid_radius, std::size_t grid_steps);

enum class ManifoldKind { kBregman, kInfimalConvolution };

std::string to_string(ManifoldKind kind);

// Supported J: plain l1 of u (Gamma = identity) and anisotropic/isotropic l1
// of Gamma u for a pointwise-structured Gamma (identity or gradient2d).
struct PenaltyDescriptor {
  const LinearMap* gamma = nullptr;  // nullptr means l1 of u
  Regularizer regularizer = Regularizer::kAnisotropic;
};

struct ManifoldTolerance {
  double tol = 0.0;
  explicit ManifoldTolerance(double value);
  // 1e-6 per entry.
  static ManifoldTolerance default_for(std::size_t entries);
};

struct MembershipReport {
  bool inside = false;
  double distance = 0.0;
  // True when the ICB was evaluated on Gamma u with a non-identity Gamma; a
  // zero value is then necessary but not sufficient for membership.
  bool necessary_only = false;
  // Entries where |p_i| ~ 1 although (Gamma u_alpha)_i = 0 (l1 of u only).
  std::size_t qualification_mismatches = 0;
  std::string note;
};

MembershipReport membership(ManifoldKind kind, const GridSignal& u,
                            const GridSignal& u_alpha, const Subgradient& sub,
                            const PenaltyDescriptor& penalty,
                            ManifoldTolerance tol);

}  // namespace debias

#endif  // DEBIAS_BREGMAN_HPP_
