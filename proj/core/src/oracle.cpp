// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "kgh/errors.hpp"

namespace kgh::oracle {

namespace {

double resolved_x_max(const PotentialParams& p, const OracleConfig& cfg) {
  return cfg.x_max > 0.0 ? cfg.x_max : 40.0 / p.lambda();
}

double left_wall(const PotentialParams& p, const OracleConfig& cfg) {
  if (cfg.boundary == Boundary::NaturalEdge && p.q() > 0.0) return std::log(p.q()) / p.lambda();
  return 0.0;
}

// The wall sits on the pole when it is the natural edge of a q > 0 potential.
bool wall_on_pole(const PotentialParams& p, const OracleConfig& cfg) {
  return p.q() > 0.0 && left_wall(p, cfg) == std::log(p.q()) / p.lambda();
}

// Psi(wall - h) / Psi(wall + h) for the fourth-order stencil.
double ghost_ratio(const PotentialParams& p, double E, const OracleConfig& cfg, double h) {
  if (!wall_on_pole(p, cfg)) return -1.0;  // regular wall: odd reflection
  const auto g = gammas(p, E);
  if (g.gamma1.real() != 0.0) return 0.0;  // Psi ~ s^a with a > 1
  // Coulomb-type edge V ~ c1/s: Psi = a s + (c1 a / 2) s^2 + O(s^3).
  const double c1 = -g.gamma2.real() / (p.q() * p.lambda());
  return -1.0 + c1 * h / (1.0 + 0.5 * c1 * h);
}

struct CoreSolve {
  double E = 0.0;
  double epsilon = 0.0;
  double gap = 0.0;
  int iters = 0;
};

CoreSolve secant(const PotentialParams& p, int k, const OracleConfig& cfg, double e0, double e1) {
  const double m = p.m();
  double g0 = selfconsistency_gap(p, k, e0, cfg);
  double g1 = selfconsistency_gap(p, k, e1, cfg);
  int it = 0;
  while (std::abs(g1) >= cfg.outer_tol) {
    if (++it > cfg.max_outer || g1 == g0) {
      std::ostringstream os;
      os << "secant iteration for level " << k << " stalled after " << it << " steps";
      throw Error(ErrorCode::OuterDivergence, os.str());
    }
    const double e2 = e1 - g1 * (e1 - e0) / (g1 - g0);
    if (!std::isfinite(e2) || std::abs(e2) > 2.0 * m)
      throw Error(ErrorCode::OuterDivergence, "secant iterate left [-2m, 2m]");
    e0 = e1;
    g0 = g1;
    e1 = e2;
    g1 = selfconsistency_gap(p, k, e1, cfg);
  }
  return {e1, g1 + (e1 * e1 - m * m), g1, it};
}

// Regula falsi with the Illinois weight inside a sign-change bracket.
CoreSolve bracketed(const PotentialParams& p, int k, const OracleConfig& cfg, double a, double ga,
                    double b, double gb) {
  const double m = p.m();
  int side = 0;
  for (int it = 1; it <= cfg.max_outer * 4; ++it) {
    double c = (a * gb - b * ga) / (gb - ga);
    if (!(c > std::min(a, b) && c < std::max(a, b))) c = 0.5 * (a + b);
    const double gc = selfconsistency_gap(p, k, c, cfg);
    if (std::abs(gc) < cfg.outer_tol || std::abs(b - a) < 4e-16 * m)
      return {c, gc + (c * c - m * m), gc, it};
    if ((gc < 0.0) == (gb < 0.0)) {
      b = c;
      gb = gc;
      if (side == -1) ga *= 0.5;
      side = -1;
    } else {
      a = c;
      ga = gc;
      if (side == 1) gb *= 0.5;
      side = 1;
    }
  }
  throw Error(ErrorCode::OuterDivergence, "bracketed outer iteration did not converge");
}

OracleResult finish(const PotentialParams& p, int k, const OracleConfig& cfg, const CoreSolve& s) {
  if (!(s.epsilon < 0.0))
    throw Error(ErrorCode::NoBoundState, "self-consistent eigenvalue is not negative");
  OracleResult r;
  r.k = k;
  r.E = s.E;
  r.epsilon = s.epsilon;
  r.outer_iters = s.iters;
  r.g_residual = std::abs(s.gap);

  const UniformGrid grid = interior_grid(p, cfg);
  const auto vec = discretize(p, s.E, cfg).eigenvector(static_cast<std::size_t>(k));
  r.eigenvector = GridFunction{grid.x0(), grid.dx(), {}};
  const double scale = 1.0 / std::sqrt(grid.dx());
  for (double v : vec) r.eigenvector.values.emplace_back(v * scale, 0.0);

  OracleConfig fine = cfg;
  fine.n_points = 2 * cfg.n_points;
  const CoreSolve s2 = secant(p, k, fine, s.E, s.E + 1e-7 * p.m());
  const double gain = std::pow(2.0, cfg.fd_order);
  r.grid_convergence_est = std::abs(s2.E - s.E) * gain / (gain - 1.0);
  return r;
}

}  // namespace

void validate(const OracleConfig& cfg, const PotentialParams& p) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidParams, msg); };
  if (p.branch() != Branch::Hermitian) fail("the finite-difference oracle is Hermitian-only");
  if (cfg.n_points < 64) fail("oracle needs n_points >= 64");
  if (cfg.fd_order != 2 && cfg.fd_order != 4) fail("fd_order must be 2 or 4");
  if (!(cfg.outer_tol > 0.0)) fail("outer_tol must be positive");
  if (cfg.max_outer < 1) fail("max_outer must be positive");
  const double x0 = left_wall(p, cfg);
  if (!(resolved_x_max(p, cfg) > std::max(0.0, x0) + 10.0 / p.lambda()))
    fail("x_max must extend beyond 10/lambda past the left wall");
  if (auto pole = hermitian_pole(p); pole && *pole > x0)
    fail("potential pole lies inside the oracle grid");
}

UniformGrid interior_grid(const PotentialParams& p, const OracleConfig& cfg) {
  const double a = left_wall(p, cfg);
  const double b = resolved_x_max(p, cfg);
  const auto n = static_cast<std::size_t>(cfg.n_points);
  const double h = (b - a) / static_cast<double>(n + 1);
  return UniformGrid(a + h, b - h, n);
}

SymmetricBand discretize_potential(std::span<const double> V, double h, int order,
                                   double left_ghost, double right_ghost) {
  const std::size_t n = V.size();
  const double h2 = h * h;
  if (order == 2) {
    SymmetricBand A(n, 1);
    for (std::size_t i = 0; i < n; ++i) A.band(0, i) = 2.0 / h2 + V[i];
    for (std::size_t i = 0; i + 1 < n; ++i) A.band(1, i) = -1.0 / h2;
    return A;
  }
  if (order != 4) throw Error(ErrorCode::InvalidParams, "fd order must be 2 or 4");
  SymmetricBand A(n, 2);
  const double c = 1.0 / (12.0 * h2);
  for (std::size_t i = 0; i < n; ++i) A.band(0, i) = 30.0 * c + V[i];
  for (std::size_t i = 0; i + 1 < n; ++i) A.band(1, i) = -16.0 * c;
  for (std::size_t i = 0; i + 2 < n; ++i) A.band(2, i) = c;
  A.band(0, 0) += left_ghost * c;
  A.band(0, n - 1) += right_ghost * c;
  return A;
}

SymmetricBand discretize(const PotentialParams& p, double E, const OracleConfig& cfg) {
  validate(cfg, p);
  const UniformGrid grid = interior_grid(p, cfg);
  std::vector<double> V(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    try {
      V[i] = effective_potential(p, E, x).real();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Pole) throw Error(ErrorCode::Pole, "pole inside the oracle grid");
      throw;
    }
  }
  return discretize_potential(V, grid.dx(), cfg.fd_order, ghost_ratio(p, E, cfg, grid.dx()));
}

double selfconsistency_gap(const PotentialParams& p, int k, double E, const OracleConfig& cfg) {
  const double eps = discretize(p, E, cfg).eigenvalue(static_cast<std::size_t>(k));
  return eps - (E * E - p.m() * p.m());
}

OracleResult solve_selfconsistent(const PotentialParams& p, int k, const OracleConfig& cfg,
                                  double seed) {
  validate(cfg, p);
  const CoreSolve s = secant(p, k, cfg, seed, seed + 1e-3 * p.m());
  return finish(p, k, cfg, s);
}

std::vector<OracleResult> bound_states(const PotentialParams& p, int k, const OracleConfig& cfg) {
  validate(cfg, p);
  const double m = p.m();
  const int S = std::max(cfg.scan_points, 8);
  std::vector<double> Es(static_cast<std::size_t>(S) + 1), gs(Es.size());
  bool any_negative = false;
  for (int i = 0; i <= S; ++i) {
    const auto u = static_cast<std::size_t>(i);
    Es[u] = -m + 2.0 * m * i / S;
    const double eps = discretize(p, Es[u], cfg).eigenvalue(static_cast<std::size_t>(k));
    gs[u] = eps - (Es[u] * Es[u] - m * m);
    any_negative = any_negative || eps < 0.0;
  }
  std::vector<OracleResult> out;
  for (std::size_t i = 0; i + 1 < Es.size(); ++i) {
    if (gs[i] == 0.0 && i > 0) {
      out.push_back(finish(p, k, cfg, {Es[i], gs[i] + Es[i] * Es[i] - m * m, 0.0, 0}));
      continue;
    }
    if (gs[i] * gs[i + 1] >= 0.0) continue;
    out.push_back(finish(p, k, cfg, bracketed(p, k, cfg, Es[i], gs[i], Es[i + 1], gs[i + 1])));
  }
  if (out.empty()) {
    std::ostringstream os;
    os << "no self-consistent bound state for level " << k
       << (any_negative ? " (eigenvalue negative but no crossing)" : "");
    throw Error(ErrorCode::NoBoundState, os.str());
  }
  return out;
}

bool ComparisonReport::within(double tol) const {
  return std::all_of(rows.begin(), rows.end(), [](const ComparisonRow& r) { return r.matched; }) &&
         worst_rel_diff < tol;
}

ComparisonReport compare(const PotentialParams& p, const std::vector<EnergyLevel>& levels,
                         const OracleConfig& cfg) {
  validate(cfg, p);
  ComparisonReport rep;
  std::map<int, std::vector<OracleResult>> cache;
  for (const auto& lv : levels) {
    if (!lv.has(RealBoundState) || !lv.has(NormalizableMuPositive)) continue;
    ComparisonRow row;
    row.n = lv.n;
    row.analytic_E = lv.E.real();
    auto it = cache.find(lv.n);
    if (it == cache.end()) {
      std::vector<OracleResult> found;
      try {
        found = bound_states(p, lv.n, cfg);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoBoundState) throw;
      }
      it = cache.emplace(lv.n, std::move(found)).first;
    }
    const OracleResult* best = nullptr;
    for (const auto& r : it->second)
      if (!best || std::abs(r.E - row.analytic_E) < std::abs(best->E - row.analytic_E)) best = &r;
    if (best) {
      row.matched = true;
      row.oracle_E = best->E;
      row.abs_diff = std::abs(row.analytic_E - best->E);
      row.rel_diff = row.abs_diff / std::abs(best->E);
      row.grid_convergence_est = best->grid_convergence_est;
    } else {
      row.oracle_E = std::numeric_limits<double>::quiet_NaN();
      row.abs_diff = row.rel_diff = std::numeric_limits<double>::infinity();
    }
    rep.worst_rel_diff = std::max(rep.worst_rel_diff, row.rel_diff);
    rep.rows.push_back(row);
  }
  return rep;
}

IsospectralityReport partner_isospectrality(const Superpotential& w, const UniformGrid& grid,
                                            int fd_order) {
  if (w.branch != Branch::Hermitian)
    throw Error(ErrorCode::InvalidParams, "partner isospectrality harness is Hermitian-only");
  const auto [v1, v2] = partner_potentials(w, grid);
  std::vector<double> r1(v1.size()), r2(v2.size());
  for (std::size_t i = 0; i < v1.size(); ++i) {
    r1[i] = v1.values[i].real();
    r2[i] = v2.values[i].real();
  }
  const double asym = std::norm(w.offset());
  auto bound = [&](const std::vector<double>& V) {
    const SymmetricBand A = discretize_potential(V, grid.dx(), fd_order, 0.0);
    std::vector<double> out;
    for (std::size_t want = 8;; want *= 2) {
      const auto ev = A.lowest_eigenvalues(std::min(want, grid.size()));
      out.clear();
      for (double e : ev)
        if (e < asym) out.push_back(e);
      if (out.size() < ev.size() || ev.size() == grid.size()) break;
    }
    return out;
  };
  IsospectralityReport rep;
  rep.partner1 = bound(r1);
  rep.partner2 = bound(r2);
  for (std::size_t j = 0; j < rep.partner2.size() && j + 1 < rep.partner1.size(); ++j) {
    rep.worst_diff = std::max(rep.worst_diff, std::abs(rep.partner2[j] - rep.partner1[j + 1]));
    ++rep.compared;
  }
  return rep;
}

}  // namespace kgh::oracle
