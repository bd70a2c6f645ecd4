// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kgh/hierarchy.hpp"
#include "kgh/potential.hpp"

namespace kgh {

enum LevelFlag : unsigned {
  NormalizableMuPositive = 1u << 0,
  RealBoundState = 1u << 1,
  ComplexPair = 1u << 2,
  NegativeReEpsilon = 1u << 3,
  InsideMassGap = 1u << 4,
  DoubleRoot = 1u << 5,
};

/// "A|B|C" in declaration order; empty string for no flags.
std::string flags_to_string(unsigned flags);

struct SolverOptions {
  int scan_points = 2048;
  double bisection_tol = 1e-13;
  double residual_tol = 1e-12;
  int max_iter = 200;
  NuRoot nu_root = NuRoot::Principal;
};

struct EnergyLevel {
  int n = 0;
  cplx E;
  cplx mu;
  double mass = 1.0;
  double residual = 0.0;
  Branch branch = Branch::Hermitian;
  unsigned flags = 0;

  [[nodiscard]] cplx epsilon() const noexcept { return E * E - mass * mass; }
  [[nodiscard]] bool has(LevelFlag f) const noexcept { return (flags & f) != 0; }
};

/// f_n(E) = (E^2 - m^2) + mu_n(E)^2. Its roots are self-consistent energies.
cplx energy_residual(const PotentialParams& p, int n, cplx E, NuRoot root = NuRoot::Principal);
cplx energy_residual_derivative(const PotentialParams& p, int n, cplx E,
                                NuRoot root = NuRoot::Principal);

/// The explicit +- formula E = +-(i/2q) sqrt([rho - (G1 + q G2)/rho]^2 - 4 q^2 m^2)
/// with Gamma2 frozen at gamma2_energy. Exact when V0_eff == 0.
std::pair<cplx, cplx> closed_form_energies(const PotentialParams& p, int n, cplx gamma2_energy,
                                           NuRoot root = NuRoot::Principal);

/// All self-consistent energies of level n (at most two). Hermitian: sign
/// scan over [-m, m] and bisection; complex branches: Newton from the
/// closed-form pair. Throws NoRoot or NonConvergence.
std::vector<EnergyLevel> solve_level(const PotentialParams& p, int n,
                                     const SolverOptions& opts = {});

/// Levels 0..n_max, keeping normalizable roots (Re mu > 0) and stopping at
/// the first level without one.
std::vector<EnergyLevel> spectrum(const PotentialParams& p, int n_max,
                                  const SolverOptions& opts = {});

struct EnergyPair {
  cplx plus;
  cplx minus;  // always -plus
  double residual_plus = 0.0;
  double residual_minus = 0.0;
  cplx epsilon;  // plus^2 - m^2
  bool negative_re_epsilon = false;
};

/// +- pair on the PTSymmetric branch; plus is Newton-polished from the
/// closed form, minus is its negation.
EnergyPair pt_energy(const PotentialParams& p, int n, const SolverOptions& opts = {});
/// Same on the NonHermitian branch.
EnergyPair nonhermitian_energy(const PotentialParams& p, int n, const SolverOptions& opts = {});

}  // namespace kgh
