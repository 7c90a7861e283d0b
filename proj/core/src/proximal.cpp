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

#include "debias/proximal.hpp"

#include <algorithm>
#include <cmath>

namespace debias {

Threshold::Threshold(double value) : value_(value) {
  require(value >= 0.0 && std::isfinite(value),
          "Threshold must be finite and nonnegative");
}

GridSignal soft_threshold_scalar(const GridSignal& f, Threshold t) {
  const double theta = t.value();
  GridSignal out(f.shape());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = f[i];
    if (std::abs(v) >= theta) out[i] = v - std::copysign(theta, v);
  }
  return out;
}

VectorField soft_threshold_vector(const VectorField& f, Threshold t) {
  const double theta = t.value();
  VectorField out(f.grid(), f.dim());
  for (std::size_t p = 0; p < f.point_count(); ++p) {
    const double m = f.magnitude(p);
    if (m <= theta) continue;
    const double scale = 1.0 - theta / m;
    for (std::size_t c = 0; c < f.dim(); ++c)
      out.component(p, c) = scale * f.component(p, c);
  }
  return out;
}

GridSignal hard_threshold(const GridSignal& f, Threshold t) {
  const double theta = t.value();
  GridSignal out(f.shape());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::abs(f[i]) >= theta) out[i] = f[i];
  return out;
}

GridSignal project_linf_box(const GridSignal& y, Threshold r) {
  GridSignal out = y;
  for (double& v : out.values()) v = std::clamp(v, -r.value(), r.value());
  return out;
}

VectorField project_linf_box(const VectorField& y, Threshold r) {
  VectorField out = y;
  clamp_in_place(out, r.value());
  return out;
}

VectorField project_linf_disk(const VectorField& y, Threshold r) {
  VectorField out = y;
  disk_project_in_place(out, r.value());
  return out;
}

void clamp_in_place(VectorField& y, double r) {
  for (double& v : y.values()) v = std::clamp(v, -r, r);
}

void disk_project_in_place(VectorField& y, double r) {
  const std::size_t d = y.dim();
  std::span<double> v = y.values();
  for (std::size_t p = 0; p < y.point_count(); ++p) {
    const double m = y.magnitude(p);
    if (m <= r) continue;
    const double scale = r / m;
    for (std::size_t c = 0; c < d; ++c) v[p * d + c] *= scale;
  }
}

}  // namespace debias
