// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <iostream>

#include "kgh/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace kgh::cli;
  CLI::App app{"Klein-Gordon bound states of the q-deformed Hulthen potential", "kg-hierarchy"};
  app.set_version_flag("--version", "kg-hierarchy 1.0.0");

  std::string command;
  std::string format = "csv";
  Options opts;
  app.add_option("command", command, "spectrum | wavefunction | verify | sweep")
      ->required()
      ->check(CLI::IsMember({"spectrum", "wavefunction", "verify", "sweep"}));
  app.add_option("--config", opts.config_path, "key=value config file")->required();
  app.add_option("--output", opts.output_path, "output path (default stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", opts.jobs, "worker threads for sweep")->check(CLI::PositiveNumber);
  app.add_option("--perturb-mu", opts.perturb_mu, "shift every level mu before verify (testing)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }
  opts.command = *parse_command(command);
  opts.format = format == "json" ? Format::Json : Format::Csv;
  std::ios::sync_with_stdio(false);
  return execute(opts, std::cout, std::cerr);
}
