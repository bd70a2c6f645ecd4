// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgh/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "kgh/errors.hpp"

namespace kgh {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

unsigned classify(const PotentialParams& p, cplx E, cplx mu) {
  unsigned flags = 0;
  const double m = p.m();
  const cplx eps = E * E - m * m;
  if (mu.real() > 0.0) flags |= NormalizableMuPositive;
  if (eps.real() < 0.0) flags |= NegativeReEpsilon;
  if (std::abs(E) < m) flags |= InsideMassGap;
  if (p.branch() == Branch::Hermitian) {
    if (E.imag() == 0.0 && E.real() > -m && E.real() < m) flags |= RealBoundState;
  } else if (std::abs(E.imag()) > 1e-12 * (1.0 + std::abs(E))) {
    flags |= ComplexPair;
  }
  return flags;
}

EnergyLevel make_level(const PotentialParams& p, int n, cplx E, NuRoot root, unsigned extra) {
  const HierarchyLevel lv = level(p, E, n, root);
  EnergyLevel out;
  out.n = n;
  out.E = E;
  out.mu = lv.mu;
  out.mass = p.m();
  out.residual = std::abs(energy_residual(p, n, E, root));
  out.branch = p.branch();
  out.flags = classify(p, E, lv.mu) | extra;
  return out;
}

/// Newton on g with derivative dg. Returns nullopt if the iteration stalls
/// without meeting tol.
std::optional<cplx> newton(const std::function<cplx(cplx)>& g, const std::function<cplx(cplx)>& dg,
                           cplx E, double tol, int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    const cplx fv = g(E);
    if (fv == 0.0) return E;
    cplx d = dg(E);
    if (d == 0.0) {
      E += cplx(1e-7, 1e-7) * (1.0 + std::abs(E));
      continue;
    }
    const cplx step = fv / d;
    E -= step;
    if (!std::isfinite(E.real()) || !std::isfinite(E.imag())) return std::nullopt;
    if (std::abs(step) <= 4.0 * kEps * (1.0 + std::abs(E))) break;
  }
  if (std::abs(g(E)) < tol) return E;
  return std::nullopt;
}

cplx polish(const PotentialParams& p, int n, cplx seed, const SolverOptions& opts) {
  auto f = [&](cplx E) { return energy_residual(p, n, E, opts.nu_root); };
  auto df = [&](cplx E) { return energy_residual_derivative(p, n, E, opts.nu_root); };
  auto root = newton(f, df, seed, opts.residual_tol, opts.max_iter);
  if (!root) {
    std::ostringstream os;
    os << "Newton iteration for level " << n << " did not converge in " << opts.max_iter
       << " steps";
    throw Error(ErrorCode::NonConvergence, os.str());
  }
  return *root;
}

void cross_check_closed_form(const PotentialParams& p, int n, const EnergyLevel& lv,
                             NuRoot root) {
  if (p.v0_eff() != 0.0) return;
  const auto [a, b] = closed_form_energies(p, n, 0.0, root);
  const double d = std::min(std::abs(lv.E - a), std::abs(lv.E - b));
  if (d > 1e-9 * (1.0 + std::abs(lv.E)))
    throw Error(ErrorCode::NonConvergence, "solver root disagrees with the explicit formula");
}

std::vector<EnergyLevel> solve_real(const PotentialParams& p, int n, const SolverOptions& opts) {
  const double m = p.m();
  auto f = [&](double E) { return energy_residual(p, n, E, opts.nu_root).real(); };
  const int N = std::max(opts.scan_points, 4);
  std::vector<double> Es(static_cast<std::size_t>(N) + 1);
  std::vector<double> fs(Es.size());
  for (int i = 0; i <= N; ++i) {
    Es[static_cast<std::size_t>(i)] = -m + 2.0 * m * i / N;
    fs[static_cast<std::size_t>(i)] = f(Es[static_cast<std::size_t>(i)]);
  }
  Es.front() = -m;
  Es.back() = m;

  std::vector<EnergyLevel> roots;
  auto push = [&](double E, unsigned extra) {
    if (!(E > -m && E < m)) return;
    roots.push_back(make_level(p, n, E, opts.nu_root, extra));
  };

  for (std::size_t i = 0; i + 1 < Es.size(); ++i) {
    double a = Es[i], b = Es[i + 1];
    double fa = fs[i], fb = fs[i + 1];
    if (fa == 0.0) {
      if (i > 0) push(a, 0);
      continue;
    }
    if (fa * fb > 0.0 || fb == 0.0) continue;
    while (b - a > opts.bisection_tol) {
      const double c = 0.5 * (a + b);
      if (c <= a || c >= b) break;
      const double fc = f(c);
      if (fc == 0.0) {
        a = b = c;
        break;
      }
      if ((fc < 0.0) == (fa < 0.0)) {
        a = c;
        fa = fc;
      } else {
        b = c;
      }
    }
    double E = 0.5 * (a + b);
    // One Newton step to squeeze the residual, kept only if it stays in the cell.
    const double d = energy_residual_derivative(p, n, E, opts.nu_root).real();
    if (d != 0.0) {
      const double En = E - f(E) / d;
      if (En >= Es[i] && En <= Es[i + 1] && std::abs(f(En)) < std::abs(f(E))) E = En;
    }
    push(E, 0);
  }

  // Tangent (double) roots: a local extremum of f touching zero without a
  // sign change.
  for (std::size_t i = 1; i + 1 < Es.size(); ++i) {
    const double f0 = fs[i - 1], f1 = fs[i], f2 = fs[i + 1];
    if (f0 * f1 <= 0.0 || f1 * f2 <= 0.0) continue;
    if (!(std::abs(f1) <= std::abs(f0) && std::abs(f1) <= std::abs(f2))) continue;
    double a = Es[i - 1], b = Es[i + 1];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = std::abs(f(c)), fd = std::abs(f(d));
    for (int it = 0; it < 200 && b - a > opts.bisection_tol; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = std::abs(f(c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = std::abs(f(d));
      }
    }
    const double E = 0.5 * (a + b);
    if (std::abs(f(E)) < opts.residual_tol) push(E, DoubleRoot);
  }

  std::sort(roots.begin(), roots.end(),
            [](const EnergyLevel& x, const EnergyLevel& y) { return x.E.real() < y.E.real(); });
  if (roots.size() > 2) roots.resize(2);
  return roots;
}

std::vector<EnergyLevel> solve_complex(const PotentialParams& p, int n, const SolverOptions& opts) {
  const auto [s1, s2] = closed_form_energies(p, n, 0.0, opts.nu_root);
  const cplx r1 = polish(p, n, s1, opts);

  auto f = [&](cplx E) { return energy_residual(p, n, E, opts.nu_root); };
  auto df = [&](cplx E) { return energy_residual_derivative(p, n, E, opts.nu_root); };
  // Second root: Newton on f / (E - r1), then polish on f itself.
  auto h = [&](cplx E) { return f(E) / (E - r1); };
  auto dh = [&](cplx E) {
    const cplx d = E - r1;
    return df(E) / d - f(E) / (d * d);
  };
  std::vector<EnergyLevel> out{make_level(p, n, r1, opts.nu_root, 0)};
  cplx seed2 = s2;
  if (std::abs(seed2 - r1) < 1e-8 * (1.0 + std::abs(r1))) seed2 = -r1 + cplx(1e-3, 1e-3);
  auto deflated = newton(h, dh, seed2, std::numeric_limits<double>::infinity(), opts.max_iter);
  if (deflated) {
    const cplx r2 = polish(p, n, *deflated, opts);
    if (std::abs(r2 - r1) > 1e-8 * (1.0 + std::abs(r1))) {
      out.push_back(make_level(p, n, r2, opts.nu_root, 0));
    } else {
      out.front().flags |= DoubleRoot;
    }
  }
  return out;
}

EnergyPair paired_energy(const PotentialParams& p, int n, const SolverOptions& opts) {
  const auto [s1, s2] = closed_form_energies(p, n, 0.0, opts.nu_root);
  (void)s2;
  // With V0_eff = 0 Gamma2 does not depend on E and the formula is exact.
  const cplx plus = p.v0_eff() == 0.0 ? s1 : polish(p, n, s1, opts);
  EnergyPair out;
  out.plus = plus;
  out.minus = -plus;
  out.residual_plus = std::abs(energy_residual(p, n, out.plus, opts.nu_root));
  out.residual_minus = std::abs(energy_residual(p, n, out.minus, opts.nu_root));
  out.epsilon = plus * plus - p.m() * p.m();
  out.negative_re_epsilon = out.epsilon.real() < 0.0;
  return out;
}

}  // namespace

std::string flags_to_string(unsigned flags) {
  static constexpr std::pair<LevelFlag, const char*> names[] = {
      {NormalizableMuPositive, "NormalizableMuPositive"},
      {RealBoundState, "RealBoundState"},
      {ComplexPair, "ComplexPair"},
      {NegativeReEpsilon, "NegativeReEpsilon"},
      {InsideMassGap, "InsideMassGap"},
      {DoubleRoot, "DoubleRoot"},
  };
  std::string out;
  for (const auto& [flag, name] : names) {
    if ((flags & flag) == 0) continue;
    if (!out.empty()) out += '|';
    out += name;
  }
  return out;
}

cplx energy_residual(const PotentialParams& p, int n, cplx E, NuRoot root) {
  const HierarchyLevel lv = level(p, E, n, root);
  return (E * E - p.m() * p.m()) + lv.mu * lv.mu;
}

cplx energy_residual_derivative(const PotentialParams& p, int n, cplx E, NuRoot root) {
  const HierarchyLevel lv = level(p, E, n, root);
  // mu is affine in E through Gamma2: d mu / dE = V0_eff / rho.
  return 2.0 * E + 2.0 * lv.mu * p.v0_eff() / lv.nu;
}

std::pair<cplx, cplx> closed_form_energies(const PotentialParams& p, int n, cplx gamma2_energy,
                                           NuRoot root) {
  const HierarchyLevel lv = level(p, gamma2_energy, n, root);
  const auto g = gammas(p, gamma2_energy);
  const double q = p.q();
  const double m = p.m();
  const cplx rho = lv.nu;
  const cplx bracket = rho - (g.gamma1 + q * g.gamma2) / rho;
  const cplx E = cplx(0.0, 1.0) / (2.0 * q) * std::sqrt(bracket * bracket - 4.0 * q * q * m * m);
  return {E, -E};
}

std::vector<EnergyLevel> solve_level(const PotentialParams& p, int n, const SolverOptions& opts) {
  if (n < 0) throw Error(ErrorCode::InvalidParams, "level index must be non-negative");
  std::vector<EnergyLevel> roots =
      p.branch() == Branch::Hermitian ? solve_real(p, n, opts) : solve_complex(p, n, opts);
  if (roots.empty()) {
    std::ostringstream os;
    os << "no self-consistent energy for level " << n;
    throw Error(ErrorCode::NoRoot, os.str());
  }
  for (const auto& r : roots) {
    if (!(r.residual < opts.residual_tol)) {
      std::ostringstream os;
      os << "level " << n << " root residual " << r.residual << " above tolerance";
      throw Error(ErrorCode::NonConvergence, os.str());
    }
    cross_check_closed_form(p, n, r, opts.nu_root);
  }
  return roots;
}

std::vector<EnergyLevel> spectrum(const PotentialParams& p, int n_max, const SolverOptions& opts) {
  if (n_max < 0) throw Error(ErrorCode::InvalidParams, "n_max must be non-negative");
  std::vector<EnergyLevel> out;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<EnergyLevel> roots;
    try {
      roots = solve_level(p, n, opts);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoRoot) break;
      throw;
    }
    bool any = false;
    for (auto& r : roots) {
      if (r.mu.real() <= 0.0) continue;
      out.push_back(r);
      any = true;
    }
    if (!any) break;
  }
  return out;
}

EnergyPair pt_energy(const PotentialParams& p, int n, const SolverOptions& opts) {
  if (p.branch() != Branch::PTSymmetric)
    throw Error(ErrorCode::InvalidParams, "pt_energy needs the pt branch");
  return paired_energy(p, n, opts);
}

EnergyPair nonhermitian_energy(const PotentialParams& p, int n, const SolverOptions& opts) {
  if (p.branch() != Branch::NonHermitian)
    throw Error(ErrorCode::InvalidParams, "nonhermitian_energy needs the nonhermitian branch");
  return paired_energy(p, n, opts);
}

}  // namespace kgh
