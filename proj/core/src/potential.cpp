// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgh/potential.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kgh/errors.hpp"

namespace kgh {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::InvalidParams, msg);
}

}  // namespace

PotentialParams::PotentialParams(const Couplings& c) : c_(c) {
  for (double v : {c.V0, c.S0, c.VI, c.lambda, c.q, c.m})
    require(std::isfinite(v), "all couplings must be finite");
  require(c.q != 0.0,
          "deformation parameter q must be nonzero (the energies diverge as q -> 0)");
  require(c.lambda > 0.0, "lambda must be positive");
  require(c.m > 0.0, "mass m must be positive");
  require(c.VI == 0.0 || c.branch == Branch::NonHermitian,
          "VI is only allowed on the nonhermitian branch");
}

cplx PotentialParams::v0_eff() const noexcept {
  return c_.branch == Branch::NonHermitian ? cplx(c_.V0, c_.VI) : cplx(c_.V0, 0.0);
}

cplx PotentialParams::lambda_eff() const noexcept {
  return c_.branch == Branch::Hermitian ? cplx(c_.lambda, 0.0) : cplx(0.0, c_.lambda);
}

cplx PotentialParams::decay(double x) const {
  // Complex branches: exp of a purely imaginary exponent, |k| = 1.
  if (c_.branch == Branch::Hermitian) return {std::exp(-c_.lambda * x), 0.0};
  return std::polar(1.0, -c_.lambda * x);
}

cplx PotentialParams::shape(double x) const {
  const cplx k = decay(x);
  const cplx denom = 1.0 - c_.q * k;
  if (std::abs(denom) < pole_tolerance) {
    std::ostringstream os;
    os << "1 - q k(x) vanishes at x = " << x;
    throw Error(ErrorCode::Pole, os.str());
  }
  return k / denom;
}

GammaPair gammas(const PotentialParams& p, cplx E) {
  const cplx v = p.v0_eff();
  return {p.S0() * p.S0() - v * v, 2.0 * (p.m() * p.S0() + E * v)};
}

std::vector<Warning> gamma_warnings(const PotentialParams& p, cplx E) {
  std::vector<Warning> out;
  const auto g = gammas(p, E);
  if (g.gamma1.real() <= 0.0)
    out.push_back({"gamma1_nonpositive", "Gamma1 = S0^2 - V0^2 is not positive"});
  if (g.gamma2.real() <= 0.0)
    out.push_back({"gamma2_nonpositive", "Gamma2 = 2(m S0 + E V0) is not positive"});
  return out;
}

cplx vector_potential(const PotentialParams& p, double x) { return -p.v0_eff() * p.shape(x); }

cplx scalar_potential(const PotentialParams& p, double x) { return -p.S0() * p.shape(x); }

cplx effective_potential(const PotentialParams& p, cplx E, double x) {
  const auto g = gammas(p, E);
  const cplx y = p.shape(x);
  return g.gamma1 * y * y - g.gamma2 * y;
}

cplx effective_potential_direct(const PotentialParams& p, cplx E, double x) {
  const cplx V = vector_potential(p, x);
  const cplx S = scalar_potential(p, x);
  return (S * S - V * V) + 2.0 * (p.m() * S + E * V);
}

std::optional<double> hermitian_pole(const PotentialParams& p) {
  if (p.q() <= 0.0) return std::nullopt;
  return std::log(p.q()) / p.lambda();
}

Interval admissible_interval(const PotentialParams& p, double x_end, std::optional<double> delta) {
  const double d = delta.value_or(1e-6 / p.lambda());
  if (p.branch() == Branch::Hermitian) {
    double start = d;
    if (auto pole = hermitian_pole(p); pole && *pole > 0.0) start = *pole + d;
    if (!(x_end > start)) throw Error(ErrorCode::Domain, "interval end precedes the domain start");
    return {start, x_end};
  }
  // |q k| = |q| on the complex branches; poles only for |q| == 1, at
  // lambda x = 2 pi j (q = 1) or pi (2j + 1) (q = -1).
  double end = x_end;
  if (std::abs(p.q()) == 1.0) {
    const double first = (p.q() > 0.0 ? 2.0 : 1.0) * std::numbers::pi / p.lambda();
    end = std::min(end, first - d);
  }
  if (!(end > d)) throw Error(ErrorCode::Domain, "interval end precedes the domain start");
  return {d, end};
}

}  // namespace kgh
