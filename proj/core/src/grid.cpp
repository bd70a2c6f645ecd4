// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgh/grid.hpp"

#include <algorithm>
#include <cmath>

#include "kgh/errors.hpp"

namespace kgh {

UniformGrid::UniformGrid(double start, double end, std::size_t n) : x0_(start), n_(n) {
  if (n < min_points) throw Error(ErrorCode::GridTooCoarse, "a grid needs at least 16 points");
  if (!(end > start)) throw Error(ErrorCode::Domain, "grid end must exceed its start");
  dx_ = (end - start) / static_cast<double>(n - 1);
}

UniformGrid GridFunction::grid() const {
  return UniformGrid(x0, x0 + dx * static_cast<double>(values.size() - 1), values.size());
}

GridFunction GridFunction::sample(const UniformGrid& g, const std::function<cplx(double)>& f) {
  GridFunction out{g.x0(), g.dx(), {}};
  out.values.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out.values.push_back(f(g.x(i)));
  return out;
}

double l2_norm(const GridFunction& f) {
  double s = 0.0;
  for (const auto& v : f.values) s += std::norm(v);
  return std::sqrt(s * f.dx);
}

double max_modulus(const GridFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace kgh
