// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <string>

#include "kgh/errors.hpp"
#include "kgh/types.hpp"

namespace kgh {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::Pole: return "Pole";
    case ErrorCode::Domain: return "Domain";
    case ErrorCode::DegenerateRoot: return "DegenerateRoot";
    case ErrorCode::ZeroNu: return "ZeroNu";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NonNormalizable: return "NonNormalizable";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::OuterDivergence: return "OuterDivergence";
    case ErrorCode::NoBoundState: return "NoBoundState";
  }
  return "Unknown";
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::Hermitian: return "hermitian";
    case Branch::PTSymmetric: return "pt";
    case Branch::NonHermitian: return "nonhermitian";
  }
  return "unknown";
}

std::optional<Branch> parse_branch(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::erase(s, '-');
  std::erase(s, '_');
  if (s == "hermitian") return Branch::Hermitian;
  if (s == "pt" || s == "ptsymmetric") return Branch::PTSymmetric;
  if (s == "nonhermitian" || s == "nh") return Branch::NonHermitian;
  return std::nullopt;
}

}  // namespace kgh
