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

#include "debias/core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace debias {

namespace {

bool finite_values(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace

void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

std::string to_string(const Shape& shape) {
  return std::to_string(shape.rows) + "x" + std::to_string(shape.cols);
}

GridSignal::GridSignal(Shape shape)
    : shape_(shape), values_(shape.size(), 0.0) {}

GridSignal::GridSignal(Shape shape, std::vector<double> values)
    : shape_(shape), values_(std::move(values)) {
  require(values_.size() == shape_.size(),
          "GridSignal: " + std::to_string(values_.size()) +
              " values do not fill shape " + to_string(shape_));
  require(finite_values(values_), "GridSignal: non-finite value");
}

GridSignal GridSignal::from_values(std::vector<double> values) {
  const Shape shape{values.size(), 1};
  return GridSignal(shape, std::move(values));
}

GridSignal GridSignal::constant(Shape shape, double value) {
  require(std::isfinite(value), "GridSignal: non-finite value");
  GridSignal s(shape);
  s.fill(value);
  return s;
}

bool GridSignal::all_finite() const { return finite_values(values_); }

void GridSignal::fill(double value) {
  std::fill(values_.begin(), values_.end(), value);
}

GridSignal& GridSignal::operator+=(const GridSignal& other) {
  require(shape_ == other.shape_, "GridSignal +=: shape mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other[i];
  return *this;
}

GridSignal& GridSignal::operator-=(const GridSignal& other) {
  require(shape_ == other.shape_, "GridSignal -=: shape mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other[i];
  return *this;
}

GridSignal& GridSignal::operator*=(double scale) {
  for (double& v : values_) v *= scale;
  return *this;
}

GridSignal operator+(GridSignal a, const GridSignal& b) { return a += b; }
GridSignal operator-(GridSignal a, const GridSignal& b) { return a -= b; }
GridSignal operator*(double scale, GridSignal a) { return a *= scale; }
GridSignal operator-(GridSignal a) { return a *= -1.0; }

VectorField::VectorField(Shape grid, std::size_t dim)
    : grid_(grid), dim_(dim), values_(grid.size() * dim, 0.0) {
  require(dim >= 1, "VectorField: dimension must be >= 1");
}

VectorField::VectorField(Shape grid, std::size_t dim,
                         std::vector<double> values)
    : grid_(grid), dim_(dim), values_(std::move(values)) {
  require(dim >= 1, "VectorField: dimension must be >= 1");
  require(values_.size() == grid_.size() * dim_,
          "VectorField: value count does not match grid " + to_string(grid_) +
              " with d=" + std::to_string(dim_));
  require(finite_values(values_), "VectorField: non-finite value");
}

VectorField VectorField::from_signal(const GridSignal& signal) {
  return VectorField(signal.shape(), 1, signal.raw());
}

double VectorField::magnitude(std::size_t point) const {
  if (dim_ == 1) return std::abs(values_[point]);
  double s = 0.0;
  for (std::size_t c = 0; c < dim_; ++c) {
    const double v = values_[point * dim_ + c];
    s += v * v;
  }
  return std::sqrt(s);
}

bool VectorField::all_finite() const { return finite_values(values_); }

void VectorField::fill(double value) {
  std::fill(values_.begin(), values_.end(), value);
}

GridSignal VectorField::to_signal() const {
  require(dim_ == 1, "VectorField::to_signal: requires d=1");
  return GridSignal(grid_, values_);
}

VectorField& VectorField::operator+=(const VectorField& other) {
  require(same_layout(other), "VectorField +=: layout mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  require(same_layout(other), "VectorField -=: layout mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other[i];
  return *this;
}

VectorField& VectorField::operator*=(double scale) {
  for (double& v : values_) v *= scale;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double scale, VectorField a) { return a *= scale; }

double inner_product(const GridSignal& a, const GridSignal& b) {
  require(a.shape() == b.shape(), "inner_product: shape mismatch " +
                                      to_string(a.shape()) + " vs " +
                                      to_string(b.shape()));
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inner_product(const VectorField& a, const VectorField& b) {
  require(a.same_layout(b), "inner_product: field layout mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Norms norms(const GridSignal& x) {
  Norms n;
  double sq = 0.0;
  for (double v : x.values()) {
    const double a = std::abs(v);
    n.l1 += a;
    sq += v * v;
    n.linf = std::max(n.linf, a);
  }
  n.l2 = std::sqrt(sq);
  return n;
}

Norms norms(const VectorField& x) {
  Norms n;
  double sq = 0.0;
  for (std::size_t i = 0; i < x.point_count(); ++i) {
    const double m = x.magnitude(i);
    n.l1 += m;
    sq += m * m;
    n.linf = std::max(n.linf, m);
  }
  n.l2 = std::sqrt(sq);
  return n;
}

double max_abs_difference(const GridSignal& a, const GridSignal& b) {
  require(a.shape() == b.shape(), "max_abs_difference: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace debias
