// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgh/wavefunctions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kgh/errors.hpp"

namespace kgh {

namespace {

// log(1 + z) without cancellation for small |z|.
cplx log1p(cplx z) {
  const double re = 0.5 * std::log1p(2.0 * z.real() + std::norm(z));
  const double im = std::atan2(z.imag(), 1.0 + z.real());
  return {re, im};
}

}  // namespace

std::string_view to_string(Normalization n) {
  return n == Normalization::L2 ? "l2" : "max_modulus";
}

GridFunction normalized(GridFunction f, Normalization how) {
  const double scale = how == Normalization::L2 ? l2_norm(f) : max_modulus(f);
  if (!(scale > 0.0) || !std::isfinite(scale)) return f;
  std::size_t peak = 0;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (std::abs(f.values[i]) > std::abs(f.values[peak])) peak = i;
  const cplx phase = std::polar(1.0, -std::arg(f.values[peak]));
  for (auto& v : f.values) v *= phase / scale;
  return f;
}

GroundState ground_state_from_W(const Superpotential& w, const UniformGrid& grid) {
  if (w.branch == Branch::Hermitian && w.offset().real() <= 0.0)
    throw Error(ErrorCode::NonNormalizable, "Re(mu) <= 0: the ground state does not decay");

  const cplx power = w.nu / (w.q * w.lambda_eff);
  std::vector<cplx> logs(grid.size());
  double prev_phase = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    (void)w.shape(x);  // pole check
    cplx L = log1p(-w.q * w.decay(x));
    if (i > 0) {
      const double turns = std::round((prev_phase - L.imag()) / (2.0 * std::numbers::pi));
      L += cplx(0.0, 2.0 * std::numbers::pi * turns);
    }
    prev_phase = L.imag();
    // -int W = nu/(q lambda) log(1 - q k) - offset x
    logs[i] = power * L - w.offset() * x;
  }
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& l : logs) top = std::max(top, l.real());

  GridFunction psi{grid.x0(), grid.dx(), {}};
  psi.values.reserve(grid.size());
  for (const auto& l : logs) psi.values.push_back(std::exp(l - top));

  const Normalization how =
      w.branch == Branch::Hermitian ? Normalization::L2 : Normalization::MaxModulus;
  return {normalized(std::move(psi), how), how};
}

cplx closed_form_psi(const PotentialParams& p, const HierarchyLevel& lv, double x) {
  const Superpotential w = superpotential(p, lv);
  const cplx base = 1.0 - w.q * w.decay(x);
  if (std::abs(base) < PotentialParams::pole_tolerance)
    throw Error(ErrorCode::Pole, "wavefunction evaluated at a pole");
  return std::pow(base, w.nu / (w.q * w.lambda_eff)) * std::exp(-w.offset() * x);
}

int node_count(const GridFunction& f) {
  const double floor = 1e-12 * max_modulus(f);
  int nodes = 0;
  int last = 0;
  for (const auto& v : f.values) {
    if (std::abs(v) < floor || v.real() == 0.0) continue;
    const int s = v.real() > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++nodes;
    last = s;
  }
  return nodes;
}

}  // namespace kgh
