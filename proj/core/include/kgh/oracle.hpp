// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "kgh/banded.hpp"
#include "kgh/grid.hpp"
#include "kgh/hierarchy.hpp"
#include "kgh/potential.hpp"
#include "kgh/spectra.hpp"

namespace kgh::oracle {

/// Where the left Dirichlet wall sits. NaturalEdge puts it at the potential
/// pole ln(q)/lambda when q > 0 (x = 0 for q = 1); Origin always uses x = 0.
enum class Boundary { NaturalEdge, Origin };

struct OracleConfig {
  double x_max = 0.0;  // <= 0 means 40 / lambda
  int n_points = 4000;
  int fd_order = 4;
  double outer_tol = 1e-10;
  int max_outer = 100;
  int scan_points = 64;
  Boundary boundary = Boundary::NaturalEdge;
};

/// Throws InvalidParams when the config violates its invariants for p.
void validate(const OracleConfig& cfg, const PotentialParams& p);

/// Interior grid (Dirichlet nodes excluded) used by discretize().
UniformGrid interior_grid(const PotentialParams& p, const OracleConfig& cfg);

/// -d^2/dx^2 + V on interior nodes spaced h, Dirichlet walls one step beyond
/// both ends. order 2 or 4; the ghost ratios are Psi(wall -+ h)/Psi(wall +- h)
/// for the fourth-order stencil at the left and right walls (-1 is odd
/// reflection, 0 drops the ghost node).
SymmetricBand discretize_potential(std::span<const double> V, double h, int order,
                                   double left_ghost = -1.0, double right_ghost = -1.0);

/// (-d^2/dx^2 + V_eff(x; E)) on the Hermitian branch.
SymmetricBand discretize(const PotentialParams& p, double E, const OracleConfig& cfg);

struct OracleResult {
  int k = 0;
  double E = 0.0;
  double epsilon = 0.0;  // k-th eigenvalue at E
  GridFunction eigenvector;
  int outer_iters = 0;
  double grid_convergence_est = 0.0;
  double g_residual = 0.0;
};

/// g(E) = eps_k(E) - (E^2 - m^2).
double selfconsistency_gap(const PotentialParams& p, int k, double E, const OracleConfig& cfg);

/// Secant iteration on g from seed (and seed + 1e-3 m). Throws
/// OuterDivergence or NoBoundState.
OracleResult solve_selfconsistent(const PotentialParams& p, int k, const OracleConfig& cfg,
                                  double seed);

/// Every self-consistent root of g for level k in (-m, m), ascending, each with
/// eigenvector and Richardson estimate. Throws NoBoundState when none.
std::vector<OracleResult> bound_states(const PotentialParams& p, int k, const OracleConfig& cfg);

struct ComparisonRow {
  int n = 0;
  double analytic_E = 0.0;
  double oracle_E = 0.0;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
  double grid_convergence_est = 0.0;
  bool matched = false;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  double worst_rel_diff = 0.0;

  [[nodiscard]] bool within(double tol) const;
};

/// Matches each normalizable real analytic level with the nearest oracle root.
ComparisonReport compare(const PotentialParams& p, const std::vector<EnergyLevel>& levels,
                         const OracleConfig& cfg);

struct IsospectralityReport {
  std::vector<double> partner1;  // bound eigenvalues of -d2 + W^2 - W'
  std::vector<double> partner2;  // bound eigenvalues of -d2 + W^2 + W'
  double worst_diff = 0.0;       // max_j |partner2[j] - partner1[j+1]|
  int compared = 0;
};

/// Discretizes both partners of a Hermitian superpotential on grid (interior
/// nodes) and compares the level-shifted bound spectra.
IsospectralityReport partner_isospectrality(const Superpotential& w, const UniformGrid& grid,
                                            int fd_order = 4);

}  // namespace kgh::oracle
