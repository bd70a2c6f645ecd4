// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kgh/cli/config.hpp"
#include "kgh/cli/table.hpp"

namespace kgh::cli {

enum class Command { Spectrum, Wavefunction, Verify, Sweep };

std::optional<Command> parse_command(const std::string& name);

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;    // config or solver error
inline constexpr int kExitNoRoot = 2;   // no bound level at n = 0
inline constexpr int kExitFailed = 3;   // verify: a check exceeded its tolerance

inline constexpr double kRiccatiTol = 1e-10;
inline constexpr double kOracleTol = 1e-3;

struct CommandResult {
  Table table;
  int exit_code = kExitOk;
  std::vector<std::string> messages;  // human-readable, for stderr
};

CommandResult run_spectrum(const RunConfig& cfg);
CommandResult run_wavefunction(const RunConfig& cfg);
/// perturb_mu shifts every level mu before the Riccati check (test hook).
CommandResult run_verify(const RunConfig& cfg, double perturb_mu = 0.0);
/// Sweep points run on up to jobs threads; rows keep sweep_values order.
CommandResult run_sweep(const RunConfig& cfg, int jobs = 1);

struct Options {
  Command command = Command::Spectrum;
  std::string config_path;
  std::string output_path;  // empty or "-" for stdout
  Format format = Format::Csv;
  int jobs = 1;
  double perturb_mu = 0.0;
};

/// Loads the config, runs the command, writes the table and returns the exit
/// code. Errors go to err as "error: ..." lines.
int execute(const Options& opts, std::ostream& out, std::ostream& err);

}  // namespace kgh::cli
