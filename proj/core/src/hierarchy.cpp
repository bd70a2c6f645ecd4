// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgh/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kgh/errors.hpp"

namespace kgh {

cplx solve_nu1(cplx gamma1, double q, cplx lambda_eff, NuRoot root) {
  if (q == 0.0) throw Error(ErrorCode::InvalidParams, "q must be nonzero");
  const cplx a = q * lambda_eff;
  cplx s = std::sqrt(a * a + 4.0 * gamma1);
  if (root == NuRoot::Conjugate) s = -s;
  // The product of the two roots is -gamma1; use it when a + s cancels.
  const cplx sum = a + s;
  const cplx diff = a - s;
  const cplx nu = std::abs(sum) >= std::abs(diff) ? 0.5 * sum : -2.0 * gamma1 / diff;
  if (std::abs(nu) == 0.0 || !std::isfinite(std::abs(nu)))
    throw Error(ErrorCode::DegenerateRoot, "selected root of nu^2 - q lambda nu - Gamma1 is zero");
  return nu;
}

HierarchyLevel level(const PotentialParams& p, cplx E, int n, NuRoot root) {
  if (n < 0) throw Error(ErrorCode::InvalidParams, "level index must be non-negative");
  const auto g = gammas(p, E);
  const double q = p.q();
  const cplx lam = p.lambda_eff();
  if (p.branch() == Branch::Hermitian) {
    const double disc = q * q * p.lambda() * p.lambda() + 4.0 * g.gamma1.real();
    if (disc < 0.0)
      throw Error(ErrorCode::Domain, "Gamma1 < -(q lambda)^2/4 gives a complex superpotential");
  }
  const cplx nu1 = solve_nu1(g.gamma1, q, lam, root);
  const double nd = static_cast<double>(n);
  const cplx rho = nu1 + nd * q * lam;
  if (std::abs(rho) <= 1e-14 * (std::abs(nu1) + std::abs(q * lam))) {
    std::ostringstream os;
    os << "nu vanishes at level " << n;
    throw Error(ErrorCode::ZeroNu, os.str());
  }
  // (Gamma1 + q Gamma2 - rho^2) / (2 q rho) with nu1^2 = q lam nu1 + Gamma1
  // substituted, which removes the division by q.
  const cplx mu = (g.gamma2 - lam * (2.0 * nd + 1.0) * nu1 - nd * nd * q * lam * lam) / (2.0 * rho);
  return {n, rho, mu, -mu * mu};
}

cplx Superpotential::offset() const noexcept {
  return branch == Branch::NonHermitian ? cplx(0.0, 1.0) * mu : mu;
}

cplx Superpotential::decay(double x) const { return std::exp(-lambda_eff * x); }

cplx Superpotential::shape(double x) const {
  const cplx k = decay(x);
  const cplx denom = 1.0 - q * k;
  if (std::abs(denom) < PotentialParams::pole_tolerance) {
    std::ostringstream os;
    os << "superpotential pole at x = " << x;
    throw Error(ErrorCode::Pole, os.str());
  }
  return k / denom;
}

Superpotential superpotential(const PotentialParams& p, const HierarchyLevel& lv) {
  Superpotential w{lv.nu, lv.mu, p.lambda_eff(), p.q(), p.branch()};
  if (p.branch() == Branch::NonHermitian) w.mu = cplx(0.0, -1.0) * lv.mu;
  return w;
}

cplx superpotential_eval(const Superpotential& w, double x) {
  return -w.nu * w.shape(x) + w.offset();
}

cplx superpotential_derivative(const Superpotential& w, double x) {
  const cplx k = w.decay(x);
  const cplx denom = 1.0 - w.q * k;
  (void)w.shape(x);  // pole check
  // d/dx [k/(1-qk)] = -lambda k/(1-qk)^2.
  return w.nu * w.lambda_eff * k / (denom * denom);
}

std::pair<GridFunction, GridFunction> partner_potentials(const Superpotential& w,
                                                         const UniformGrid& grid) {
  GridFunction v1{grid.x0(), grid.dx(), {}};
  GridFunction v2{grid.x0(), grid.dx(), {}};
  v1.values.reserve(grid.size());
  v2.values.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    const cplx W = superpotential_eval(w, x);
    const cplx dW = superpotential_derivative(w, x);
    v1.values.push_back(W * W - dW);
    v2.values.push_back(W * W + dW);
  }
  return {std::move(v1), std::move(v2)};
}

cplx hierarchy_potential(const PotentialParams& p, cplx E, int n, double x, NuRoot root) {
  cplx v = effective_potential(p, E, x);
  for (int j = 0; j < n; ++j)
    v += 2.0 * superpotential_derivative(superpotential(p, level(p, E, j, root)), x);
  return v;
}

RiccatiCheck riccati_residual(const PotentialParams& p, cplx E, int n, const UniformGrid& grid,
                              NuRoot root, double mu_shift) {
  HierarchyLevel lv = level(p, E, n, root);
  lv.mu += mu_shift;
  lv.epsilon = -lv.mu * lv.mu;

  std::vector<Superpotential> lower;
  lower.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) lower.push_back(superpotential(p, level(p, E, j, root)));
  const Superpotential w = superpotential(p, lv);

  RiccatiCheck out;
  double vmax = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    cplx vn = effective_potential(p, E, x);
    for (const auto& wj : lower) vn += 2.0 * superpotential_derivative(wj, x);
    const cplx W = superpotential_eval(w, x);
    const cplx lhs = W * W - superpotential_derivative(w, x);
    out.residual = std::max(out.residual, std::abs(lhs - (vn - lv.epsilon)));
    vmax = std::max(vmax, std::abs(vn));
  }
  out.scale = 1.0 + vmax;
  return out;
}

GridFunction apply_ladder(const Superpotential& w, const GridFunction& psi, LadderSign sign) {
  const std::size_t n = psi.size();
  if (n < UniformGrid::min_points)
    throw Error(ErrorCode::GridTooCoarse, "ladder operator needs at least 16 samples");
  const double h = psi.dx;
  const double s = sign == LadderSign::Plus ? 1.0 : -1.0;
  const auto& f = psi.values;
  GridFunction out{psi.x(2), h, {}};
  out.values.reserve(n - 4);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const cplx df = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
    out.values.push_back(s * df + superpotential_eval(w, psi.x(i)) * f[i]);
  }
  return out;
}

}  // namespace kgh
