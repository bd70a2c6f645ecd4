// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include "kgh/grid.hpp"
#include "kgh/hierarchy.hpp"
#include "kgh/potential.hpp"

namespace kgh {

enum class Normalization { L2, MaxModulus };

std::string_view to_string(Normalization n);

struct GroundState {
  GridFunction psi;
  Normalization normalization = Normalization::L2;
};

/// exp(-int W) from the antiderivative mu_term x - (nu/(q lambda_eff)) log(1 - q k),
/// with the logarithm's phase unwrapped along the grid. L2-normalized on the
/// Hermitian branch, max-modulus elsewhere. Throws NonNormalizable when
/// Re(offset) <= 0 on the Hermitian branch.
GroundState ground_state_from_W(const Superpotential& w, const UniformGrid& grid);

/// Unnormalized (1 - q k)^{nu/(q lambda_eff)} exp(-offset x) at a single point
/// (principal branch of the complex power).
cplx closed_form_psi(const PotentialParams& p, const HierarchyLevel& lv, double x);

/// Strict sign changes of Re f, ignoring samples below 1e-12 max|f|.
int node_count(const GridFunction& f);

/// Scale f so that its L2 norm (or max modulus) is one and the sample of
/// largest modulus is real and positive.
GridFunction normalized(GridFunction f, Normalization how);

}  // namespace kgh
