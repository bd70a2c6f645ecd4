// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>

#include "kgh/grid.hpp"
#include "kgh/potential.hpp"

namespace kgh {

/// Which root of nu^2 - q lambda_eff nu - Gamma1 = 0 seeds the hierarchy.
/// Principal takes +sqrt; Conjugate takes -sqrt and is used for the PT image
/// of a non-Hermitian problem.
enum class NuRoot { Principal, Conjugate };

/// Root of nu (nu - q lambda_eff) = Gamma1. Throws DegenerateRoot if it is 0.
cplx solve_nu1(cplx gamma1, double q, cplx lambda_eff, NuRoot root = NuRoot::Principal);

/// Algebraic data of hierarchy level n at trial energy E.
struct HierarchyLevel {
  int n = 0;
  cplx nu;       // nu_1 + n q lambda_eff
  cplx mu;       // constant term of the level superpotential
  cplx epsilon;  // -mu^2
};

/// Throws ZeroNu when nu vanishes and Domain when the Hermitian branch would
/// need a complex nu_1 (Gamma1 < -(q lambda)^2 / 4).
HierarchyLevel level(const PotentialParams& p, cplx E, int n, NuRoot root = NuRoot::Principal);

/// W(x) = -nu k/(1 - q k) + offset, offset = mu (Hermitian, PT) or i mu
/// (NonHermitian).
struct Superpotential {
  cplx nu;
  cplx mu;
  cplx lambda_eff;
  double q = 1.0;
  Branch branch = Branch::Hermitian;

  [[nodiscard]] cplx offset() const noexcept;
  [[nodiscard]] cplx decay(double x) const;
  [[nodiscard]] cplx shape(double x) const;
};

/// Superpotential whose offset equals level.mu on every branch.
Superpotential superpotential(const PotentialParams& p, const HierarchyLevel& lv);

cplx superpotential_eval(const Superpotential& w, double x);
/// Closed-form derivative nu lambda_eff k / (1 - q k)^2.
cplx superpotential_derivative(const Superpotential& w, double x);

/// (W^2 - W', W^2 + W') sampled on the grid.
std::pair<GridFunction, GridFunction> partner_potentials(const Superpotential& w,
                                                         const UniformGrid& grid);

/// V_eff(x) + 2 sum_{j<n} W_j'(x): the potential whose ground state is the
/// n-th level of V_eff. Equals V_eff for n = 0.
cplx hierarchy_potential(const PotentialParams& p, cplx E, int n, double x,
                         NuRoot root = NuRoot::Principal);

struct RiccatiCheck {
  double residual = 0.0;  // sup |W_n^2 - W_n' - (V^(n) - eps_n)|
  double scale = 1.0;     // 1 + sup |V^(n)|

  [[nodiscard]] double scaled() const noexcept { return residual / scale; }
};

/// mu_shift perturbs the level mu (epsilon follows) before the comparison.
RiccatiCheck riccati_residual(const PotentialParams& p, cplx E, int n, const UniformGrid& grid,
                              NuRoot root = NuRoot::Principal, double mu_shift = 0.0);

enum class LadderSign { Plus, Minus };

/// (+-d/dx + W) psi on the interior points (two dropped at each end), using
/// fourth-order central differences. Plus annihilates exp(-int W).
GridFunction apply_ladder(const Superpotential& w, const GridFunction& psi, LadderSign sign);

}  // namespace kgh
