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

#ifndef DEBIAS_OPERATORS_HPP_
#define DEBIAS_OPERATORS_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "debias/core.hpp"

namespace debias {

enum class MapKind { kIdentity, kGradient2d, kConvolution1d };

std::string to_string(MapKind kind);

// A linear operator from signals on `domain()` to vector fields on
// `codomain_grid()` with `codomain_dim()` components, together with its exact
// transpose and an analytic upper bound on its operator norm.
class LinearMap {
 public:
  // With group > 1 the identity regroups a (m, group) signal into m points of
  // dimension `group`; raw values are untouched.
  static LinearMap identity(Shape domain, std::size_t group = 1);
  // Forward differences with Neumann boundary; component 0 is horizontal
  // (along a row), component 1 vertical.
  static LinearMap gradient2d(Shape domain);
  // Circular convolution with an odd-length kernel centred at len/2.
  static LinearMap convolution1d(Shape domain, std::vector<double> kernel);

  MapKind kind() const { return kind_; }
  const Shape& domain() const { return domain_; }
  const Shape& codomain_grid() const { return codomain_grid_; }
  std::size_t codomain_dim() const { return codomain_dim_; }
  const std::vector<double>& kernel() const { return kernel_; }
  bool is_identity() const { return kind_ == MapKind::kIdentity; }

  VectorField apply(const GridSignal& x) const;
  GridSignal adjoint(const VectorField& y) const;
  // Allocation-free variants; `out` must already have the right layout.
  void apply_into(const GridSignal& x, VectorField& out) const;
  void adjoint_into(const VectorField& y, GridSignal& out) const;

  VectorField zero_codomain() const {
    return VectorField(codomain_grid_, codomain_dim_);
  }
  double norm_bound() const;

 private:
  LinearMap(MapKind kind, Shape domain, Shape codomain_grid,
            std::size_t codomain_dim, std::vector<double> kernel);

  MapKind kind_;
  Shape domain_;
  Shape codomain_grid_;
  std::size_t codomain_dim_;
  std::vector<double> kernel_;
};

// K = [A; Gamma] sharing a domain.
struct StackedMap {
  LinearMap top;
  LinearMap bottom;

  StackedMap(LinearMap top_map, LinearMap bottom_map);
  double norm_bound() const;
};

VectorField gradient2d(const GridSignal& u);
// Returns Gamma^T y, the exact transpose of gradient2d (the negative of the
// usual discrete divergence).
GridSignal divergence2d(const VectorField& y);

GridSignal convolve1d(const GridSignal& u, std::span<const double> kernel);
// Circular correlation, i.e. convolution with the reversed kernel.
GridSignal conv1d_adjoint(const GridSignal& v, std::span<const double> kernel);

// Normalized sampled Gaussian of odd length.
std::vector<double> gaussian_kernel(std::size_t length, double stddev);
// Accepts "gaussian:<len>:<std>" or a comma separated coefficient list.
std::vector<double> parse_kernel(std::string_view text);

struct PowerMethodResult {
  // Largest ||K x_k|| / ||x_k|| seen over the iterates.
  double ratio = 0.0;
  std::vector<double> iterate;
};

// Power iteration on K^T K supplied as `normal_op(x, out) : out = K^T K x`.
PowerMethodResult power_method(
    std::size_t dim,
    const std::function<void(std::span<const double>, std::span<double>)>&
        normal_op,
    int iters, Seed seed);

inline constexpr double kNormSafetyFactor = 1.01;

// Safety-scaled power-method estimate of ||K||, capped by the analytic bound
// (which is itself a valid upper bound). gradient2d returns sqrt(8) directly.
double estimate_norm(const LinearMap& map, int iters, Seed seed);
double estimate_norm(const StackedMap& map, int iters, Seed seed);

}  // namespace debias

#endif  // DEBIAS_OPERATORS_HPP_
