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

#include <gtest/gtest.h>

#include <cmath>

#include "debias/bregman.hpp"
#include "debias/proximal.hpp"
#include "test_support.hpp"

namespace debias {
namespace {

using testing::column;

PdConfig shrink_cfg(double alpha) {
  PdConfig c;
  c.alpha = alpha;
  return c;
}

TEST(SolveStep1, ShrinkageExample) {
  const GridSignal f = column({2, 0.5, -3});
  const LinearMap id = LinearMap::identity(f.shape());
  const StepOneResult r = solve_step1(id, id, f, shrink_cfg(1.0));
  EXPECT_TRUE(r.report.converged());
  EXPECT_LT(max_abs_difference(r.u, column({1, 0, -2})), 1e-3);
  EXPECT_LT(std::abs(r.report.final_gap), 1e-5);
  EXPECT_NEAR(pd_gap(GapVariant::kBregman, r.state, 1.0, GridSignal(f.shape()),
                     f, id, id, Regularizer::kAnisotropic),
              r.report.final_gap, 1e-12);
}

TEST(SolveStep1, ZeroData) {
  const GridSignal f(Shape{5, 1});
  const LinearMap id = LinearMap::identity(f.shape());
  const StepOneResult r = solve_step1(id, id, f, shrink_cfg(0.5));
  EXPECT_EQ(norms(r.u).linf, 0.0);
  EXPECT_EQ(norms(r.subgradient.p).linf, 0.0);
}

TEST(SolveStep1, ConstantImageUnderTv) {
  GridSignal f(Shape{8, 8});
  f.fill(0.4);
  const StepOneResult r =
      solve_step1(LinearMap::identity(f.shape()), LinearMap::gradient2d(f.shape()),
                  f, shrink_cfg(0.3));
  EXPECT_TRUE(r.report.converged());
  EXPECT_LT(max_abs_difference(r.u, f), 1e-6);
}

TEST(SolveStep1, IsotropicShrinkage) {
  std::mt19937_64 rng(4);
  const Shape sh{16, 2};
  const GridSignal f = testing::uniform_signal(sh, -1.5, 1.5, rng);
  const LinearMap g = LinearMap::identity(sh, 2);
  PdConfig c = shrink_cfg(0.5);
  c.regularizer = Regularizer::kIsotropic;
  const StepOneResult r = solve_step1(LinearMap::identity(sh), g, f, c);
  const VectorField expect =
      soft_threshold_vector(g.apply(f), Threshold(0.5));
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(r.u[i], expect[i], 1e-3);
}

TEST(PdGap, ZeroStateZeroData) {
  const Shape sh{4, 1};
  const LinearMap id = LinearMap::identity(sh);
  PdState s{GridSignal(sh), GridSignal(sh), id.zero_codomain(),
            id.zero_codomain(), id.zero_codomain()};
  const GridSignal zero(sh);
  EXPECT_EQ(pd_gap(GapVariant::kBregman, s, 1.0, zero, zero, id, id,
                   Regularizer::kAnisotropic),
                   0.0);
  EXPECT_EQ(pd_gap(GapVariant::kInfimalConvolution, s, 1.0, zero, zero, id, id,
                   Regularizer::kAnisotropic),
            0.0);
}

TEST(SolveStep2Bregman, ZeroSubgradientReproducesStep1) {
  std::mt19937_64 rng(9);
  const GridSignal f = testing::uniform_signal(Shape{32, 1}, -2, 2, rng);
  const LinearMap id = LinearMap::identity(f.shape());
  PdConfig c = shrink_cfg(0.3);
  c.gamma = c.alpha;
  c.debias_step_ratio = c.step_ratio;
  const StepOneResult s1 = solve_step1(id, id, f, c);
  const StepTwoResult s2 =
      solve_step2_bregman(id, id, f, GridSignal(f.shape()), c);
  EXPECT_EQ(s1.u, s2.u);
  EXPECT_EQ(s1.report.iterations, s2.report.iterations);
}

TEST(SolveStep2, HardThresholdOnSmallExample) {
  const GridSignal f = column({2, 0.5, -3});
  const LinearMap id = LinearMap::identity(f.shape());
  const PdConfig c = shrink_cfg(1.0);
  const StepOneResult s1 = solve_step1(id, id, f, c);
  const GridSignal p =
      feasible_subgradient(s1.subgradient, id, Regularizer::kAnisotropic);
  const StepTwoResult b = solve_step2_bregman(id, id, f, p, c);
  const StepTwoResult i = solve_step2_icb(id, id, f, p, c);
  EXPECT_TRUE(b.report.converged());
  EXPECT_TRUE(i.report.converged());
  EXPECT_LT(max_abs_difference(b.u, column({2, 0, -3})), 1e-3);
  EXPECT_LT(max_abs_difference(i.u, column({2, 0, -3})), 1e-3);
}

TEST(SolveStep2Icb, ZeroDataStaysZero) {
  const GridSignal f(Shape{6, 1});
  const LinearMap id = LinearMap::identity(f.shape());
  const StepTwoResult r = solve_step2_icb(id, id, f, f, shrink_cfg(0.5));
  EXPECT_EQ(norms(r.u).linf, 0.0);
  EXPECT_EQ(norms(r.z).linf, 0.0);
}

TEST(WarmStart, LeavesFixedPointUnchanged) {
  std::mt19937_64 rng(10);
  const GridSignal f = testing::uniform_signal(Shape{24, 1}, -2, 2, rng);
  const LinearMap id = LinearMap::identity(f.shape());
  const PdConfig c = shrink_cfg(0.4);
  const StepOneResult s1 = solve_step1(id, id, f, c);
  const GridSignal p =
      feasible_subgradient(s1.subgradient, id, Regularizer::kAnisotropic);
  const PdState init = warm_start_from(s1, c, GapVariant::kInfimalConvolution);
  const StepTwoResult cold = solve_step2_icb(id, id, f, p, c);
  const StepTwoResult warm = solve_step2_icb(id, id, f, p, c, &init);
  EXPECT_LT(max_abs_difference(cold.u, warm.u), 1e-3);
  EXPECT_EQ(norms(init.z).linf, 0.0);
  EXPECT_EQ(init.u, s1.u);
}

TEST(Report, StepsObeyNormBound) {
  std::mt19937_64 rng(12);
  const Shape sh{12, 12};
  const GridSignal f = testing::uniform_signal(sh, 0, 1, rng);
  const StepOneResult r = solve_step1(LinearMap::identity(sh),
                                      LinearMap::gradient2d(sh), f,
                                      shrink_cfg(0.2));
  EXPECT_GT(r.report.operator_norm, 0.0);
  EXPECT_LT(r.report.sigma * r.report.tau *
                r.report.operator_norm * r.report.operator_norm,
            1.0);
  EXPECT_FALSE(r.report.gap_history.empty());
}

TEST(Report, PaperFixedKeepsConfiguredSteps) {
  const GridSignal f = column({1, -1, 0.2});
  const LinearMap id = LinearMap::identity(f.shape());
  PdConfig c = PdConfig::table1();
  c.max_iter = 20;
  const StepOneResult r = solve_step1(id, id, f, c);
  EXPECT_EQ(r.report.sigma, c.sigma);
  EXPECT_EQ(r.report.tau, c.tau);
}

TEST(Report, MaxIterReturnsBestIterate) {
  std::mt19937_64 rng(13);
  const Shape sh{16, 16};
  const GridSignal f = testing::uniform_signal(sh, 0, 1, rng);
  PdConfig c = shrink_cfg(0.3);
  c.max_iter = 15;
  const StepOneResult r =
      solve_step1(LinearMap::identity(sh), LinearMap::gradient2d(sh), f, c);
  EXPECT_EQ(r.report.termination, Termination::kMaxIter);
  EXPECT_TRUE(r.u.all_finite());
}

TEST(PdConfig, Validation) {
  PdConfig c;
  c.alpha = 0.0;
  EXPECT_THROW(c.validate(), ContractViolation);
  c = PdConfig{};
  c.eps1 = -1;
  EXPECT_THROW(c.validate(), ContractViolation);
  c = PdConfig{};
  c.debias_step_ratio = 0;
  EXPECT_THROW(c.validate(), ContractViolation);
  const LinearMap id = LinearMap::identity(Shape{2, 1});
  PdConfig bad;
  bad.alpha = -1;
  EXPECT_THROW(solve_step1(id, id, column({1, 2}), bad), ContractViolation);
}

TEST(PdConfig, Table1Values) {
  const PdConfig c = PdConfig::table1();
  EXPECT_EQ(c.alpha, 0.3);
  EXPECT_EQ(c.gamma, 1000.0);
  EXPECT_DOUBLE_EQ(c.sigma, 1.0 / std::sqrt(8.0));
  EXPECT_DOUBLE_EQ(c.tau, 1.0 / std::sqrt(8.0));
  EXPECT_EQ(c.eps1, 1e-5);
  EXPECT_EQ(c.eps2, 1e-6);
  EXPECT_EQ(c.eps3, 1e-6);
  EXPECT_EQ(c.step_rule, StepRule::kPaperFixed);
  EXPECT_EQ(parse_step_rule(to_string(StepRule::kNormAdaptive)),
            StepRule::kNormAdaptive);
}

TEST(Determinism, RepeatedSolvesAreBitIdentical) {
  std::mt19937_64 rng(14);
  const Shape sh{10, 10};
  const GridSignal f = testing::uniform_signal(sh, 0, 1, rng);
  const LinearMap a = LinearMap::identity(sh), g = LinearMap::gradient2d(sh);
  const StepOneResult r1 = solve_step1(a, g, f, shrink_cfg(0.2));
  const StepOneResult r2 = solve_step1(a, g, f, shrink_cfg(0.2));
  EXPECT_EQ(r1.u, r2.u);
  EXPECT_EQ(r1.report.gap_history, r2.report.gap_history);
}

}  // namespace
}  // namespace debias
