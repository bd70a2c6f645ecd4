// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "kgh/types.hpp"

namespace kgh {

/// Uniform sample positions x_i = x0 + i dx, i < size.
class UniformGrid {
 public:
  static constexpr std::size_t min_points = 16;

  /// n points spanning [start, end] inclusive. Throws GridTooCoarse for n < 16.
  UniformGrid(double start, double end, std::size_t n);

  [[nodiscard]] double x0() const noexcept { return x0_; }
  [[nodiscard]] double dx() const noexcept { return dx_; }
  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] double x(std::size_t i) const noexcept { return x0_ + static_cast<double>(i) * dx_; }
  [[nodiscard]] double back() const noexcept { return x(n_ - 1); }

 private:
  double x0_;
  double dx_;
  std::size_t n_;
};

/// Complex samples on a uniform grid.
struct GridFunction {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<cplx> values;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] double x(std::size_t i) const noexcept { return x0 + static_cast<double>(i) * dx; }
  [[nodiscard]] UniformGrid grid() const;

  static GridFunction sample(const UniformGrid& g, const std::function<cplx(double)>& f);
};

/// sqrt(sum |f_i|^2 dx).
double l2_norm(const GridFunction& f);
double max_modulus(const GridFunction& f);

}  // namespace kgh
