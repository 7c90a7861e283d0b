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

#ifndef DEBIAS_CORE_HPP_
#define DEBIAS_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace debias {

// Raised when a caller breaks a documented precondition (shape mismatch,
// negative threshold, non-finite input, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Shape {
  std::size_t rows = 0;
  std::size_t cols = 1;

  std::size_t size() const { return rows * cols; }
  bool is_1d() const { return cols == 1; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(const Shape& shape);

// Reproducible pseudo-random stream identifier.
struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(const Seed&, const Seed&) = default;
};

// Real-valued 1-D signal (cols == 1) or 2-D image, stored row-major.
class GridSignal {
 public:
  GridSignal() = default;
  // Zero signal of the given shape.
  explicit GridSignal(Shape shape);
  // Throws ContractViolation if the count does not match or a value is not
  // finite.
  GridSignal(Shape shape, std::vector<double> values);

  static GridSignal from_values(std::vector<double> values);
  static GridSignal constant(Shape shape, double value);

  const Shape& shape() const { return shape_; }
  std::size_t rows() const { return shape_.rows; }
  std::size_t cols() const { return shape_.cols; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double at(std::size_t row, std::size_t col) const {
    return values_[row * shape_.cols + col];
  }
  double& at(std::size_t row, std::size_t col) {
    return values_[row * shape_.cols + col];
  }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  const std::vector<double>& raw() const { return values_; }

  bool all_finite() const;
  void fill(double value);

  GridSignal& operator+=(const GridSignal& other);
  GridSignal& operator-=(const GridSignal& other);
  GridSignal& operator*=(double scale);

  friend bool operator==(const GridSignal&, const GridSignal&) = default;

 private:
  Shape shape_;
  std::vector<double> values_;
};

GridSignal operator+(GridSignal a, const GridSignal& b);
GridSignal operator-(GridSignal a, const GridSignal& b);
GridSignal operator*(double scale, GridSignal a);
GridSignal operator-(GridSignal a);

// Pointwise d-component vectors on a grid. Point i occupies
// values[i*d, (i+1)*d).
class VectorField {
 public:
  VectorField() = default;
  VectorField(Shape grid, std::size_t dim);
  VectorField(Shape grid, std::size_t dim, std::vector<double> values);

  // d = 1 view of a signal's values on the same grid.
  static VectorField from_signal(const GridSignal& signal);

  const Shape& grid() const { return grid_; }
  std::size_t dim() const { return dim_; }
  std::size_t point_count() const { return grid_.size(); }
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double component(std::size_t point, std::size_t c) const {
    return values_[point * dim_ + c];
  }
  double& component(std::size_t point, std::size_t c) {
    return values_[point * dim_ + c];
  }
  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * dim_, dim_);
  }
  double magnitude(std::size_t point) const;

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  bool all_finite() const;
  void fill(double value);
  bool same_layout(const VectorField& other) const {
    return grid_ == other.grid_ && dim_ == other.dim_;
  }

  // Reinterprets a d = 1 field as a signal on its grid.
  GridSignal to_signal() const;

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double scale);

  friend bool operator==(const VectorField&, const VectorField&) = default;

 private:
  Shape grid_;
  std::size_t dim_ = 1;
  std::vector<double> values_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double scale, VectorField a);

struct Norms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

// Sums run in index order so results are bit-reproducible.
double inner_product(const GridSignal& a, const GridSignal& b);
double inner_product(const VectorField& a, const VectorField& b);

Norms norms(const GridSignal& x);
// l1 is the group norm sum_i |x_i| over pointwise Euclidean magnitudes; linf
// is the largest pointwise magnitude.
Norms norms(const VectorField& x);

double max_abs_difference(const GridSignal& a, const GridSignal& b);

void require(bool condition, const std::string& message);

}  // namespace debias

#endif  // DEBIAS_CORE_HPP_
