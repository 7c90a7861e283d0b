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

#include <gtest/gtest.h>

#include "debias/proximal.hpp"
#include "test_support.hpp"

namespace debias {
namespace {

using testing::column;

TEST(RunTwoStep, L1DenoisingExample) {
  const GridSignal f = column({2, 0.5, -3});
  const LinearMap id = LinearMap::identity(f.shape());
  PdConfig c;
  c.alpha = 1.0;
  const DebiasResult r = run_two_step(id, id, f, c, DebiasMethod::kBoth);
  ASSERT_TRUE(r.u_hat_b && r.u_hat_ic);
  EXPECT_LT(max_abs_difference(*r.u_hat_b, column({2, 0, -3})), 1e-3);
  EXPECT_LT(max_abs_difference(*r.u_hat_ic, column({2, 0, -3})), 1e-3);
  ASSERT_TRUE(r.manifold_b && r.manifold_ic);
  EXPECT_TRUE(r.manifold_b->inside);
  EXPECT_TRUE(r.manifold_ic->inside);
}

TEST(RunTwoStep, RestoresJumpsOfPiecewiseConstantSignal) {
  // Values 0, 1, 0.4 on a 60-sample line; Gamma = forward differences.
  std::vector<double> v(60);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i < 20 ? 0.0 : (i < 40 ? 1.0 : 0.4);
  const GridSignal f = column(v);
  PdConfig c;
  c.alpha = 0.5;
  const DebiasResult r = run_two_step(LinearMap::identity(f.shape()),
                                      LinearMap::gradient2d(f.shape()), f, c,
                                      DebiasMethod::kBregman);
  EXPECT_GT(max_abs_difference(r.u_alpha, f), 0.05);
  EXPECT_LT(max_abs_difference(*r.u_hat_b, f), 0.05 * 1.0);
}

TEST(RunTwoStep, SelectsRequestedMethod) {
  const GridSignal f = column({1, -2});
  const LinearMap id = LinearMap::identity(f.shape());
  PdConfig c;
  c.alpha = 0.5;
  const DebiasResult b = run_two_step(id, id, f, c, DebiasMethod::kBregman);
  EXPECT_TRUE(b.u_hat_b.has_value());
  EXPECT_FALSE(b.u_hat_ic.has_value());
  const DebiasResult i = run_two_step(id, id, f, c, DebiasMethod::kIcb);
  EXPECT_FALSE(i.u_hat_b.has_value());
  EXPECT_TRUE(i.u_hat_ic.has_value());
  EXPECT_TRUE(i.z.has_value());
}

TEST(RunTwoStep, RejectsZeroAlpha) {
  const GridSignal f = column({1});
  const LinearMap id = LinearMap::identity(f.shape());
  PdConfig c;
  c.alpha = 0.0;
  EXPECT_THROW(run_two_step(id, id, f, c, DebiasMethod::kBoth),
               ContractViolation);
}

// A loose step 1 leaves |p_i| slightly below 1 on the support; those entries
// are snapped to sign(u_alpha), the rest keep the clamped value.
TEST(RunTwoStep, AlignsSubgradientWithStep1Support) {
  const GridSignal f = column({2, 0.5, -3, 1.4, -0.2});
  const LinearMap id = LinearMap::identity(f.shape());
  PdConfig c;
  c.alpha = 1.0;
  c.eps1 = 1e-2;
  c.eps2 = 1e-2;
  const DebiasResult r = run_two_step(id, id, f, c, DebiasMethod::kBregman);
  const GridSignal clamped = project_linf_box(r.p_alpha.p, Threshold(1));
  std::size_t snapped = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::abs(r.u_alpha[i]) > 1e-4 && std::abs(clamped[i]) >= 0.99) {
      EXPECT_EQ(r.p_step2[i], r.u_alpha[i] > 0 ? 1.0 : -1.0) << i;
      snapped += std::abs(clamped[i]) < 1.0;
    } else {
      EXPECT_EQ(r.p_step2[i], clamped[i]) << i;
    }
  }
  EXPECT_GT(snapped, 0u);
  const auto dist = [&](const GridSignal& p) {
    return norms(r.u_alpha).l1 - inner_product(p, r.u_alpha);
  };
  EXPECT_LT(dist(r.p_step2), dist(clamped));

  TwoStepOptions raw;
  raw.support_threshold = 0.0;
  const DebiasResult q = run_two_step(id, id, f, c, DebiasMethod::kBregman, raw);
  EXPECT_EQ(q.p_step2, clamped);
}

TEST(DebiasMethod, Strings) {
  EXPECT_EQ(parse_debias_method("icb"), DebiasMethod::kIcb);
  EXPECT_EQ(to_string(DebiasMethod::kBoth), "both");
  EXPECT_THROW(parse_debias_method("ista"), ContractViolation);
}

TEST(BregmanIterations, FirstIterateIsStep1) {
  std::mt19937_64 rng(3);
  const GridSignal f = testing::uniform_signal(Shape{8, 8}, 0, 1, rng);
  const LinearMap a = LinearMap::identity(f.shape());
  const LinearMap g = LinearMap::gradient2d(f.shape());
  PdConfig c;
  c.alpha = 0.2;
  const BregmanTrace t = run_bregman_iterations(a, g, f, 0.2, 3, std::nullopt, c);
  ASSERT_EQ(t.iterates.size(), 3u);
  EXPECT_EQ(t.iterates[0].u, solve_step1(a, g, f, c).u);
  // Residuals shrink along the inverse scale space.
  EXPECT_LT(t.iterates[2].residual, t.iterates[0].residual);
}

TEST(BregmanIterations, SingleStepTrace) {
  const GridSignal f = column({1, 0, -1});
  const LinearMap id = LinearMap::identity(f.shape());
  const BregmanTrace t =
      run_bregman_iterations(id, id, f, 0.3, 1, std::nullopt, PdConfig{});
  EXPECT_EQ(t.iterates.size(), 1u);
}

TEST(BregmanIterations, SecondIterateRecoversSingularVector) {
  const Shape sh{16, 1};
  std::vector<double> v(16, 0.0);
  v[2] = 0.5;
  v[9] = -0.5;
  const GridSignal f = column(v);
  const LinearMap id = LinearMap::identity(sh);
  const BregmanTrace t =
      run_bregman_iterations(id, id, f, 0.25, 2, std::nullopt, PdConfig{});
  ASSERT_EQ(t.iterates.size(), 2u);
  EXPECT_LT(max_abs_difference(t.iterates[1].u, f), 1e-3);
}

TEST(BregmanIterations, StopsOnDiscrepancy) {
  const GridSignal f = column({1, -1, 0.5, 0});
  const LinearMap id = LinearMap::identity(f.shape());
  const BregmanTrace t =
      run_bregman_iterations(id, id, f, 0.2, 10, 1.0, PdConfig{});
  EXPECT_TRUE(t.stopped_on_discrepancy);
  EXPECT_EQ(t.iterates.size(), 1u);
  EXPECT_THROW(run_bregman_iterations(id, id, f, 0.2, 0, std::nullopt, PdConfig{}),
               ContractViolation);
}

TEST(SingularVector, FrozenExample) {
  PdConfig c;
  c.alpha = 0.25;
  const SingularVectorReport r =
      run_singular_vector_experiment(2.0, 1.0, {1, -1, 0, 0}, Shape{4, 1}, c);
  EXPECT_EQ(r.u_lambda.raw(), (std::vector<double>{0.5, -0.5, 0, 0}));
  EXPECT_LT(max_abs_difference(r.result.u_alpha, column({0.25, -0.25, 0, 0})),
            1e-3);
  EXPECT_LT(max_abs_difference(*r.result.u_hat_b, column({0.5, -0.5, 0, 0})),
            1e-3);
  EXPECT_LT(max_abs_difference(*r.result.u_hat_ic, column({0.5, -0.5, 0, 0})),
            1e-3);
  EXPECT_LT(std::max({r.err_u_alpha, r.err_u_hat_b, r.err_u_hat_ic}), 1e-3);
}

TEST(SingularVector, NearLimitKeepsDebiasedExact) {
  PdConfig c;
  c.alpha = 0.49;  // lambda alpha = 0.98 just below c = 1
  const SingularVectorReport r =
      run_singular_vector_experiment(2.0, 1.0, {1, 0, -1, 0}, Shape{4, 1}, c);
  EXPECT_LT(norms(r.result.u_alpha).linf, 0.011);
  EXPECT_LT(r.err_u_hat_b, 1e-3);
  EXPECT_LT(r.err_u_hat_ic, 1e-3);
}

TEST(SingularVector, RejectsBadInput) {
  PdConfig c;
  c.alpha = 0.25;
  EXPECT_THROW(run_singular_vector_experiment(2, 1, {0, 0}, Shape{2, 1}, c),
               ContractViolation);
  EXPECT_THROW(run_singular_vector_experiment(2, 0.4, {1, 0}, Shape{2, 1}, c),
               ContractViolation);
  EXPECT_THROW(run_singular_vector_experiment(2, 1, {2, 0}, Shape{2, 1}, c),
               ContractViolation);
}

}  // namespace
}  // namespace debias
