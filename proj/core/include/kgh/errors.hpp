// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kgh {

enum class ErrorCode {
  InvalidParams,
  Pole,
  Domain,
  DegenerateRoot,
  ZeroNu,
  NoRoot,
  NonConvergence,
  NonNormalizable,
  GridTooCoarse,
  OuterDivergence,
  NoBoundState,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kgh
