// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgh/types.hpp"

namespace kgh {

/// Raw inputs; validated by constructing a PotentialParams.
struct Couplings {
  double V0 = 0.0;      // vector coupling
  double S0 = 0.0;      // scalar coupling
  double VI = 0.0;      // imaginary vector part, NonHermitian only
  double lambda = 1.0;  // screening parameter, > 0
  double q = 1.0;       // deformation, != 0
  double m = 1.0;       // particle mass, > 0
  Branch branch = Branch::Hermitian;
};

/// Validated parameters of the q-deformed Hulthen family. Immutable.
class PotentialParams {
 public:
  /// Throws Error{InvalidParams} for q == 0, lambda <= 0, m <= 0, non-finite
  /// input, or VI != 0 outside the NonHermitian branch.
  explicit PotentialParams(const Couplings& c);

  [[nodiscard]] const Couplings& couplings() const noexcept { return c_; }
  [[nodiscard]] double V0() const noexcept { return c_.V0; }
  [[nodiscard]] double S0() const noexcept { return c_.S0; }
  [[nodiscard]] double VI() const noexcept { return c_.VI; }
  [[nodiscard]] double lambda() const noexcept { return c_.lambda; }
  [[nodiscard]] double q() const noexcept { return c_.q; }
  [[nodiscard]] double m() const noexcept { return c_.m; }
  [[nodiscard]] Branch branch() const noexcept { return c_.branch; }

  /// V0 + i VI on the NonHermitian branch, V0 otherwise.
  [[nodiscard]] cplx v0_eff() const noexcept;
  /// lambda on the Hermitian branch, i lambda on the complex branches.
  [[nodiscard]] cplx lambda_eff() const noexcept;

  /// k(x) = exp(-lambda_eff x).
  [[nodiscard]] cplx decay(double x) const;

  /// k / (1 - q k). Throws Error{Pole} when |1 - q k| is below pole_tolerance.
  [[nodiscard]] cplx shape(double x) const;

  static constexpr double pole_tolerance = 1e-12;

 private:
  Couplings c_;
};

struct GammaPair {
  cplx gamma1;
  cplx gamma2;
};

/// Gamma1 = S0^2 - V0_eff^2, Gamma2 = 2 (m S0 + E V0_eff).
GammaPair gammas(const PotentialParams& p, cplx E);

/// d Gamma2 / dE.
inline cplx gamma2_slope(const PotentialParams& p) { return 2.0 * p.v0_eff(); }

struct Warning {
  std::string code;
  std::string message;
};

/// Non-fatal diagnostics: Gamma1 <= 0 or Gamma2 <= 0 (real parts).
std::vector<Warning> gamma_warnings(const PotentialParams& p, cplx E);

cplx vector_potential(const PotentialParams& p, double x);
cplx scalar_potential(const PotentialParams& p, double x);

/// Gamma form: Gamma1 y^2 - Gamma2 y, y = k/(1-qk).
cplx effective_potential(const PotentialParams& p, cplx E, double x);

/// Direct form [S^2 - V^2] + 2[m S + E V] built from the two Lorentz parts.
cplx effective_potential_direct(const PotentialParams& p, cplx E, double x);

/// Location of the real-axis pole 1 - q e^{-lambda x} = 0 on the Hermitian
/// branch (q > 0 only). May be negative.
std::optional<double> hermitian_pole(const PotentialParams& p);

/// Closed interval of admissible sample positions.
struct Interval {
  double start;
  double end;
};

/// Domain start max(0, x_pole) + delta on the Hermitian branch, delta for the
/// complex branches; the end is clipped before the first pole of the complex
/// branches (which exist only for |q| == 1). delta defaults to 1e-6/lambda.
Interval admissible_interval(const PotentialParams& p, double x_end,
                             std::optional<double> delta = std::nullopt);

}  // namespace kgh
