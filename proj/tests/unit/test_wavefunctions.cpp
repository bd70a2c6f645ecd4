// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kgh/errors.hpp"
#include "kgh/spectra.hpp"
#include "kgh/wavefunctions.hpp"

using kgh::Branch;
using kgh::Couplings;
using kgh::cplx;
using kgh::PotentialParams;

namespace {

PotentialParams make(double V0, double S0, double lambda, double q, Branch b = Branch::Hermitian,
                     double VI = 0.0) {
  return PotentialParams(Couplings{V0, S0, VI, lambda, q, 1.0, b});
}

double max_diff(const kgh::GridFunction& a, const kgh::GridFunction& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

}  // namespace

TEST_CASE("closed form and exp(-int W) agree on every branch") {
  const PotentialParams sets[] = {
      make(0.0, 1.0, 0.2, 1.0),
      make(0.3, 0.5, 0.25, 0.8),
      make(0.3, 0.5, 0.25, 0.8, Branch::PTSymmetric),
      make(0.3, 0.5, 0.25, 0.8, Branch::NonHermitian, 0.1),
      make(0.0, 1.0, 0.2, 1.0, Branch::PTSymmetric),
  };
  for (const auto& p : sets) {
    for (int n = 0; n < 3; ++n) {
      const auto roots = kgh::solve_level(p, n);
      const auto lv = kgh::level(p, roots.back().E, n);
      const auto iv = kgh::admissible_interval(p, 60.0, 0.1);
      const kgh::UniformGrid g(iv.start, iv.end, 1500);
      const auto w = kgh::superpotential(p, lv);
      if (p.branch() == Branch::Hermitian && w.offset().real() <= 0.0) continue;
      const auto gs = kgh::ground_state_from_W(w, g);
      const auto cf = kgh::normalized(
          kgh::GridFunction::sample(g, [&](double x) { return kgh::closed_form_psi(p, lv, x); }),
          gs.normalization);
      CHECK(max_diff(gs.psi, cf) < 1e-12);
      CHECK(gs.normalization ==
            (p.branch() == Branch::Hermitian ? kgh::Normalization::L2
                                             : kgh::Normalization::MaxModulus));
    }
  }
}

TEST_CASE("normalization conventions") {
  const auto p = make(0.0, 1.0, 0.2, 1.0);
  const auto lv = kgh::level(p, 0.5932916861416783, 0);
  const kgh::UniformGrid g(0.01, 150.0, 3000);
  const auto gs = kgh::ground_state_from_W(kgh::superpotential(p, lv), g);
  CHECK(kgh::l2_norm(gs.psi) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(kgh::to_string(gs.normalization) == "l2");

  const auto pt = make(0.3, 0.5, 0.25, 0.8, Branch::PTSymmetric);
  const auto lp = kgh::level(pt, kgh::pt_energy(pt, 0).plus, 0);
  const auto gp = kgh::ground_state_from_W(kgh::superpotential(pt, lp), g);
  CHECK(kgh::max_modulus(gp.psi) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(kgh::to_string(gp.normalization) == "max_modulus");
}

TEST_CASE("hermitian ground state decays") {
  // 25 / Re(mu) past the peak. The (1 - qk)^p prefactor keeps the peak well
  // below the e^{-mu x} envelope, and e^{-20} leaves too little margin.
  const PotentialParams sets[] = {make(0.0, 1.0, 0.2, 1.0), make(0.25, 0.25, 0.2, 1.0),
                                  make(0.3, 0.5, 0.25, 0.8)};
  for (const auto& p : sets) {
    for (int n = 0; n < 3; ++n) {
      const auto lv = kgh::level(p, kgh::solve_level(p, n).back().E, n);
      const auto w = kgh::superpotential(p, lv);
      const auto probe = kgh::ground_state_from_W(w, kgh::UniformGrid(0.01, 40.0 / lv.mu.real(), 4000));
      std::size_t peak = 0;
      for (std::size_t i = 0; i < probe.psi.size(); ++i)
        if (std::abs(probe.psi.values[i]) > std::abs(probe.psi.values[peak])) peak = i;
      const double end = probe.psi.x(peak) + 25.0 / lv.mu.real();
      const auto gs = kgh::ground_state_from_W(w, kgh::UniformGrid(0.01, end, 4000));
      CHECK(std::abs(gs.psi.values.back()) < 1e-8 * kgh::max_modulus(gs.psi));
      CHECK(std::isfinite(std::abs(gs.psi.values.front())));
      CHECK(std::abs(kgh::closed_form_psi(p, lv, 3000.0)) < 1e-300);
    }
  }
}

TEST_CASE("negative mu is not normalizable") {
  const auto p = make(0.25, 0.25, 0.2, 1.0);
  const auto low = kgh::solve_level(p, 0).front();
  REQUIRE(low.mu.real() < 0.0);
  const kgh::UniformGrid g(0.01, 50.0, 200);
  try {
    (void)kgh::ground_state_from_W(kgh::superpotential(p, kgh::level(p, low.E, 0)), g);
    FAIL("expected NonNormalizable");
  } catch (const kgh::Error& e) {
    CHECK(e.code() == kgh::ErrorCode::NonNormalizable);
  }
}

TEST_CASE("small q limit") {
  const auto p = make(0.0, 1.0, 0.2, 1e-8);
  const auto lv = kgh::level(p, 0.0, 0);
  const double nu = lv.nu.real(), mu = lv.mu.real(), lam = 0.2;
  const kgh::UniformGrid g(0.0, 40.0, 800);
  const auto gs = kgh::ground_state_from_W(kgh::superpotential(p, lv), g);
  const auto lim = kgh::normalized(kgh::GridFunction::sample(g,
                                                             [&](double x) {
                                                               const double k = std::exp(-lam * x);
                                                               return cplx(std::exp(-(nu / lam) * k - mu * x));
                                                             }),
                                   kgh::Normalization::L2);
  double rel = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    rel = std::max(rel, std::abs(gs.psi.values[i] - lim.values[i]) / kgh::max_modulus(lim));
  CHECK(rel < 1e-6);
}

TEST_CASE("nonhermitian phase factor has unit modulus for real mu") {
  const kgh::Superpotential w{0.0, 0.7, cplx(0.0, 0.25), 0.8, Branch::NonHermitian};
  const kgh::UniformGrid g(0.1, 30.0, 300);
  const auto gs = kgh::ground_state_from_W(w, g);
  for (const auto& v : gs.psi.values) CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("node counting") {
  const kgh::UniformGrid g(0.0, 1.0, 1001);
  CHECK(kgh::node_count(kgh::GridFunction::sample(g, [](double) { return cplx(3.0); })) == 0);
  for (int k = 0; k < 5; ++k) {
    const auto f = kgh::GridFunction::sample(g, [k](double x) {
      return cplx(std::sin((k + 1) * std::numbers::pi * (x + 1e-3) / 1.002));
    });
    CHECK(kgh::node_count(f) == k);
  }
  // Tiny ripples around zero are ignored.
  const auto rip = kgh::GridFunction::sample(g, [](double x) {
    return cplx(x < 0.5 ? 1.0 : 1e-14 * std::sin(200.0 * x));
  });
  CHECK(kgh::node_count(rip) == 0);

  const auto p = make(0.0, 1.0, 0.2, 1.0);
  const auto gs = kgh::ground_state_from_W(
      kgh::superpotential(p, kgh::level(p, 0.5932916861416783, 0)), kgh::UniformGrid(0.01, 100, 500));
  CHECK(kgh::node_count(gs.psi) == 0);
}
