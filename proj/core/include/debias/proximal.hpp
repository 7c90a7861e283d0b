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

#ifndef DEBIAS_PROXIMAL_HPP_
#define DEBIAS_PROXIMAL_HPP_

#include "debias/core.hpp"

// Closed-form proximal maps of l1-type penalties and the matching dual-ball
// projections. All maps are exact formulas; no tolerances are involved.
namespace debias {

// Nonnegative shrinkage level or ball radius.
class Threshold {
 public:
  explicit Threshold(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// f_i - t sign(f_i) where |f_i| >= t, else 0. At |f_i| == t both branches give
// 0.
GridSignal soft_threshold_scalar(const GridSignal& f, Threshold t);

// Pointwise (1 - t/|f_i|) f_i where |f_i| > t, else 0.
//
// For d = 1 this differs from soft_threshold_scalar only in which branch
// handles |f_i| == t; both yield 0 there.
VectorField soft_threshold_vector(const VectorField& f, Threshold t);

// Keeps f_i where |f_i| >= t (values exactly on the threshold survive).
GridSignal hard_threshold(const GridSignal& f, Threshold t);

// Componentwise clamp to [-r, r].
GridSignal project_linf_box(const GridSignal& y, Threshold r);
VectorField project_linf_box(const VectorField& y, Threshold r);

// Pointwise Euclidean projection onto the radius-r disk.
VectorField project_linf_disk(const VectorField& y, Threshold r);

// In-place kernels used by the solvers.
void clamp_in_place(VectorField& y, double r);
void disk_project_in_place(VectorField& y, double r);

}  // namespace debias

#endif  // DEBIAS_PROXIMAL_HPP_
