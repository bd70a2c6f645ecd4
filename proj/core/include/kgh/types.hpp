// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>
#include <string_view>

namespace kgh {

using cplx = std::complex<double>;

enum class Branch { Hermitian, PTSymmetric, NonHermitian };

std::string_view to_string(Branch b);
std::optional<Branch> parse_branch(std::string_view text);

inline bool is_complex_branch(Branch b) { return b != Branch::Hermitian; }

}  // namespace kgh
