// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kgh/oracle.hpp"
#include "kgh/potential.hpp"

namespace kgh::cli {

/// Parse failure. line is 1-based, or 0 when the problem is not tied to a
/// single line (e.g. a missing key or an inconsistent combination).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, int line, const std::string& msg);
  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] const std::string& source() const noexcept { return source_; }

 private:
  std::string source_;
  int line_;
};

struct RunConfig {
  Couplings couplings;
  int n_max = 10;
  std::optional<std::string> sweep_key;
  std::vector<double> sweep_values;
  oracle::OracleConfig oracle;

  /// Validated parameters (construction already succeeded during parsing).
  [[nodiscard]] PotentialParams params() const { return PotentialParams(couplings); }
};

/// Keys a sweep may vary.
bool is_sweepable(const std::string& key);

/// Couplings with key set to value.
Couplings with_value(Couplings c, const std::string& key, double value);

/// key=value lines, '#' starts a comment, blank lines ignored. Rejects unknown
/// and duplicate keys, malformed numbers, q = 0 (also inside sweep_values
/// when sweeping q), and any parameter combination PotentialParams refuses.
RunConfig parse_config(std::istream& in, const std::string& source = "config");
RunConfig load_config(const std::string& path);

}  // namespace kgh::cli
