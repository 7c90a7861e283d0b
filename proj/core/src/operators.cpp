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

#include "debias/operators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <utility>

namespace debias {

namespace {

void gradient_into(const Shape& s, std::span<const double> u,
                   std::span<double> out) {
  const std::size_t rows = s.rows;
  const std::size_t cols = s.cols;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t i = r * cols + c;
      out[2 * i] = (c + 1 < cols) ? u[i + 1] - u[i] : 0.0;
      out[2 * i + 1] = (r + 1 < rows) ? u[i + cols] - u[i] : 0.0;
    }
  }
}

void gradient_adjoint_into(const Shape& s, std::span<const double> y,
                           std::span<double> out) {
  const std::size_t rows = s.rows;
  const std::size_t cols = s.cols;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t i = r * cols + c;
      double v = 0.0;
      if (c + 1 < cols) v -= y[2 * i];
      if (c > 0) v += y[2 * (i - 1)];
      if (r + 1 < rows) v -= y[2 * i + 1];
      if (r > 0) v += y[2 * (i - cols) + 1];
      out[i] = v;
    }
  }
}

void convolve_into(std::span<const double> u, std::span<const double> k,
                   std::span<double> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(k.size() / 2);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(k.size());
         ++j) {
      std::ptrdiff_t idx = (i - j + half) % n;
      if (idx < 0) idx += n;
      s += k[j] * u[idx];
    }
    out[i] = s;
  }
}

void correlate_into(std::span<const double> v, std::span<const double> k,
                    std::span<double> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(k.size() / 2);
  for (std::ptrdiff_t m = 0; m < n; ++m) {
    double s = 0.0;
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(k.size());
         ++j) {
      std::ptrdiff_t idx = (m + j - half) % n;
      if (idx < 0) idx += n;
      s += k[j] * v[idx];
    }
    out[m] = s;
  }
}

void check_kernel(std::span<const double> kernel, std::size_t n) {
  require(!kernel.empty() && kernel.size() % 2 == 1,
          "convolution kernel length must be odd");
  require(kernel.size() <= n, "convolution kernel longer than signal");
  for (double k : kernel)
    require(std::isfinite(k), "convolution kernel entries must be finite");
}

}  // namespace

std::string to_string(MapKind kind) {
  switch (kind) {
    case MapKind::kIdentity:
      return "identity";
    case MapKind::kGradient2d:
      return "gradient2d";
    case MapKind::kConvolution1d:
      return "convolution1d";
  }
  return "unknown";
}

LinearMap::LinearMap(MapKind kind, Shape domain, Shape codomain_grid,
                     std::size_t codomain_dim, std::vector<double> kernel)
    : kind_(kind),
      domain_(domain),
      codomain_grid_(codomain_grid),
      codomain_dim_(codomain_dim),
      kernel_(std::move(kernel)) {}

LinearMap LinearMap::identity(Shape domain, std::size_t group) {
  require(group >= 1, "identity: group must be >= 1");
  if (group == 1) return LinearMap(MapKind::kIdentity, domain, domain, 1, {});
  require(domain.cols == group,
          "identity: grouped identity needs cols == group");
  return LinearMap(MapKind::kIdentity, domain, Shape{domain.rows, 1}, group,
                   {});
}

LinearMap LinearMap::gradient2d(Shape domain) {
  require(domain.rows >= 1 && domain.cols >= 1, "gradient2d: empty grid");
  return LinearMap(MapKind::kGradient2d, domain, domain, 2, {});
}

LinearMap LinearMap::convolution1d(Shape domain, std::vector<double> kernel) {
  require(domain.is_1d(), "convolution1d: domain must be 1-D");
  check_kernel(kernel, domain.size());
  return LinearMap(MapKind::kConvolution1d, domain, domain, 1,
                   std::move(kernel));
}

void LinearMap::apply_into(const GridSignal& x, VectorField& out) const {
  require(x.shape() == domain_, "LinearMap::apply: domain mismatch");
  require(out.grid() == codomain_grid_ && out.dim() == codomain_dim_,
          "LinearMap::apply: output layout mismatch");
  switch (kind_) {
    case MapKind::kIdentity:
      std::copy(x.values().begin(), x.values().end(), out.values().begin());
      break;
    case MapKind::kGradient2d:
      gradient_into(domain_, x.values(), out.values());
      break;
    case MapKind::kConvolution1d:
      convolve_into(x.values(), kernel_, out.values());
      break;
  }
}

void LinearMap::adjoint_into(const VectorField& y, GridSignal& out) const {
  require(y.grid() == codomain_grid_ && y.dim() == codomain_dim_,
          "LinearMap::adjoint: codomain mismatch");
  require(out.shape() == domain_, "LinearMap::adjoint: output shape mismatch");
  switch (kind_) {
    case MapKind::kIdentity:
      std::copy(y.values().begin(), y.values().end(), out.values().begin());
      break;
    case MapKind::kGradient2d:
      gradient_adjoint_into(domain_, y.values(), out.values());
      break;
    case MapKind::kConvolution1d:
      correlate_into(y.values(), kernel_, out.values());
      break;
  }
}

VectorField LinearMap::apply(const GridSignal& x) const {
  VectorField out = zero_codomain();
  apply_into(x, out);
  return out;
}

GridSignal LinearMap::adjoint(const VectorField& y) const {
  GridSignal out(domain_);
  adjoint_into(y, out);
  return out;
}

double LinearMap::norm_bound() const {
  switch (kind_) {
    case MapKind::kIdentity:
      return domain_.size() == 0 ? 0.0 : 1.0;
    case MapKind::kGradient2d:
      return std::sqrt(8.0);
    case MapKind::kConvolution1d: {
      // Young's inequality: ||k * u||_2 <= ||k||_1 ||u||_2.
      double s = 0.0;
      for (double k : kernel_) s += std::abs(k);
      return s;
    }
  }
  return 0.0;
}

StackedMap::StackedMap(LinearMap top_map, LinearMap bottom_map)
    : top(std::move(top_map)), bottom(std::move(bottom_map)) {
  require(top.domain() == bottom.domain(), "StackedMap: domain mismatch");
}

double StackedMap::norm_bound() const {
  const double a = top.norm_bound();
  const double b = bottom.norm_bound();
  return std::sqrt(a * a + b * b);
}

VectorField gradient2d(const GridSignal& u) {
  return LinearMap::gradient2d(u.shape()).apply(u);
}

GridSignal divergence2d(const VectorField& y) {
  require(y.dim() == 2, "divergence2d: field must have d=2");
  return LinearMap::gradient2d(y.grid()).adjoint(y);
}

GridSignal convolve1d(const GridSignal& u, std::span<const double> kernel) {
  require(u.shape().is_1d(), "convolve1d: signal must be 1-D");
  check_kernel(kernel, u.size());
  GridSignal out(u.shape());
  convolve_into(u.values(), kernel, out.values());
  return out;
}

GridSignal conv1d_adjoint(const GridSignal& v,
                          std::span<const double> kernel) {
  require(v.shape().is_1d(), "conv1d_adjoint: signal must be 1-D");
  check_kernel(kernel, v.size());
  GridSignal out(v.shape());
  correlate_into(v.values(), kernel, out.values());
  return out;
}

std::vector<double> gaussian_kernel(std::size_t length, double stddev) {
  require(length % 2 == 1, "gaussian_kernel: length must be odd");
  require(stddev > 0.0 && std::isfinite(stddev),
          "gaussian_kernel: stddev must be positive");
  std::vector<double> k(length);
  const double centre = static_cast<double>(length / 2);
  double total = 0.0;
  for (std::size_t i = 0; i < length; ++i) {
    const double x = static_cast<double>(i) - centre;
    k[i] = std::exp(-0.5 * x * x / (stddev * stddev));
    total += k[i];
  }
  for (double& v : k) v /= total;
  return k;
}

namespace {

double parse_double(std::string_view token, std::string_view context) {
  while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
  while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  require(ec == std::errc() && ptr == token.data() + token.size() &&
              std::isfinite(value),
          "cannot parse number '" + std::string(token) + "' in " +
              std::string(context));
  return value;
}

}  // namespace

std::vector<double> parse_kernel(std::string_view text) {
  constexpr std::string_view kGaussian = "gaussian:";
  if (text.starts_with(kGaussian)) {
    const std::string_view rest = text.substr(kGaussian.size());
    const auto colon = rest.find(':');
    require(colon != std::string_view::npos,
            "kernel spec must be gaussian:<len>:<std>");
    const double len = parse_double(rest.substr(0, colon), "kernel length");
    const double sd = parse_double(rest.substr(colon + 1), "kernel std");
    require(len >= 1 && len == std::floor(len),
            "kernel length must be a positive integer");
    return gaussian_kernel(static_cast<std::size_t>(len), sd);
  }
  std::vector<double> k;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    k.push_back(parse_double(text.substr(start, end - start), "kernel list"));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  require(k.size() % 2 == 1, "kernel length must be odd");
  return k;
}

PowerMethodResult power_method(
    std::size_t dim,
    const std::function<void(std::span<const double>, std::span<double>)>&
        normal_op,
    int iters, Seed seed) {
  require(iters >= 10, "power_method: need at least 10 iterations");
  PowerMethodResult result;
  if (dim == 0) return result;
  std::mt19937_64 rng(seed.value);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(dim);
  std::vector<double> y(dim);
  for (double& v : x) v = gauss(rng);
  auto normalize = [](std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    s = std::sqrt(s);
    if (s > 0.0)
      for (double& e : v) e /= s;
    return s;
  };
  normalize(x);
  for (int it = 0; it < iters; ++it) {
    normal_op(x, y);
    // <x, K^T K x> = ||K x||^2 for unit x.
    double rq = 0.0;
    for (std::size_t i = 0; i < dim; ++i) rq += x[i] * y[i];
    const double ratio = std::sqrt(std::max(rq, 0.0));
    if (ratio >= result.ratio) {
      result.ratio = ratio;
      result.iterate = x;
    }
    if (normalize(y) == 0.0) break;
    std::swap(x, y);
  }
  if (result.iterate.empty()) result.iterate = x;
  return result;
}

double estimate_norm(const LinearMap& map, int iters, Seed seed) {
  require(iters >= 10, "estimate_norm: need at least 10 iterations");
  if (map.kind() == MapKind::kGradient2d) return map.norm_bound();
  GridSignal x(map.domain());
  GridSignal out(map.domain());
  VectorField mid = map.zero_codomain();
  const auto normal = [&](std::span<const double> in, std::span<double> res) {
    std::copy(in.begin(), in.end(), x.values().begin());
    map.apply_into(x, mid);
    map.adjoint_into(mid, out);
    std::copy(out.values().begin(), out.values().end(), res.begin());
  };
  const auto pm = power_method(map.domain().size(), normal, iters, seed);
  return std::min(kNormSafetyFactor * pm.ratio, map.norm_bound());
}

double estimate_norm(const StackedMap& map, int iters, Seed seed) {
  require(iters >= 10, "estimate_norm: need at least 10 iterations");
  GridSignal x(map.top.domain());
  GridSignal out_top(map.top.domain());
  GridSignal out_bottom(map.top.domain());
  VectorField mid_top = map.top.zero_codomain();
  VectorField mid_bottom = map.bottom.zero_codomain();
  const auto normal = [&](std::span<const double> in, std::span<double> res) {
    std::copy(in.begin(), in.end(), x.values().begin());
    map.top.apply_into(x, mid_top);
    map.top.adjoint_into(mid_top, out_top);
    map.bottom.apply_into(x, mid_bottom);
    map.bottom.adjoint_into(mid_bottom, out_bottom);
    for (std::size_t i = 0; i < res.size(); ++i)
      res[i] = out_top[i] + out_bottom[i];
  };
  const auto pm = power_method(map.top.domain().size(), normal, iters, seed);
  return std::min(kNormSafetyFactor * pm.ratio, map.norm_bound());
}

}  // namespace debias
