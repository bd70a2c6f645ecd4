// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgh/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "kgh/errors.hpp"
#include "kgh/hierarchy.hpp"
#include "kgh/oracle.hpp"
#include "kgh/spectra.hpp"
#include "kgh/wavefunctions.hpp"

namespace kgh::cli {

namespace {

const std::vector<std::string> kLevelColumns{"n",      "re_E",  "im_E",     "re_eps", "im_eps",
                                             "re_mu",  "im_mu", "residual", "flags"};

std::vector<Cell> level_cells(const EnergyLevel& l) {
  const cplx eps = l.epsilon();
  return {std::int64_t{l.n}, l.E.real(),   l.E.imag(), eps.real(),          eps.imag(),
          l.mu.real(),       l.mu.imag(),  l.residual, flags_to_string(l.flags)};
}

void add_param_meta(Table& t, const RunConfig& cfg) {
  const auto& c = cfg.couplings;
  t.meta.emplace_back("branch", std::string(to_string(c.branch)));
  t.meta.emplace_back("V0", format_double(c.V0));
  t.meta.emplace_back("S0", format_double(c.S0));
  t.meta.emplace_back("VI", format_double(c.VI));
  t.meta.emplace_back("lambda", format_double(c.lambda));
  t.meta.emplace_back("q", format_double(c.q));
  t.meta.emplace_back("m", format_double(c.m));
  t.meta.emplace_back("n_max", std::to_string(cfg.n_max));
}

double x_end(const RunConfig& cfg) {
  return cfg.oracle.x_max > 0.0 ? cfg.oracle.x_max : 40.0 / cfg.couplings.lambda;
}

UniformGrid level_grid(const PotentialParams& p, const RunConfig& cfg) {
  const Interval iv = admissible_interval(p, x_end(cfg));
  return UniformGrid(iv.start, iv.end, static_cast<std::size_t>(cfg.oracle.n_points));
}

// spectrum() with NoRoot at n = 0 and an empty result told apart from
// other solver failures.
std::vector<EnergyLevel> bound_spectrum(const PotentialParams& p, int n_max, CommandResult& res) {
  try {
    (void)solve_level(p, 0);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoRoot) throw;
    res.exit_code = kExitNoRoot;
    res.messages.push_back(std::string("no bound state: ") + e.what());
    return {};
  }
  auto levels = spectrum(p, n_max);
  if (levels.empty()) {
    res.exit_code = kExitNoRoot;
    res.messages.emplace_back("no bound state: every n = 0 root has Re(mu) <= 0");
  }
  return levels;
}

std::string status(bool ok) { return ok ? "pass" : "fail"; }

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  if (name == "spectrum") return Command::Spectrum;
  if (name == "wavefunction") return Command::Wavefunction;
  if (name == "verify") return Command::Verify;
  if (name == "sweep") return Command::Sweep;
  return std::nullopt;
}

CommandResult run_spectrum(const RunConfig& cfg) {
  CommandResult res;
  res.table.columns = kLevelColumns;
  add_param_meta(res.table, cfg);
  for (const auto& l : bound_spectrum(cfg.params(), cfg.n_max, res)) res.table.add(level_cells(l));
  return res;
}

CommandResult run_wavefunction(const RunConfig& cfg) {
  CommandResult res;
  Table& t = res.table;
  t.columns = {"n", "root", "re_E", "im_E", "x", "re_psi", "im_psi"};
  t.csv_meta = true;
  add_param_meta(t, cfg);
  const PotentialParams p = cfg.params();
  const auto levels = bound_spectrum(p, cfg.n_max, res);
  const bool hermitian = p.branch() == Branch::Hermitian;
  t.meta.emplace_back("normalization", std::string(to_string(hermitian ? Normalization::L2
                                                                       : Normalization::MaxModulus)));
  t.meta.emplace_back("form", "(1 - q exp(-lambda_eff x))^(nu/(q lambda_eff)) * exp(-mu x)");
  t.meta.emplace_back("lambda_eff", hermitian ? "lambda" : "i*lambda");
  if (levels.empty()) return res;

  const UniformGrid grid = level_grid(p, cfg);
  t.meta.emplace_back("x_start", format_double(grid.x0()));
  t.meta.emplace_back("x_end", format_double(grid.back()));
  int root = 0;
  int prev_n = -1;
  for (const auto& l : levels) {
    root = l.n == prev_n ? root + 1 : 0;
    prev_n = l.n;
    const auto gs = ground_state_from_W(superpotential(p, level(p, l.E, l.n)), grid);
    for (std::size_t i = 0; i < gs.psi.size(); ++i) {
      const cplx v = gs.psi.values[i];
      t.add({std::int64_t{l.n}, std::int64_t{root}, l.E.real(), l.E.imag(), gs.psi.x(i), v.real(),
             v.imag()});
    }
  }
  return res;
}

CommandResult run_verify(const RunConfig& cfg, double perturb_mu) {
  CommandResult res;
  Table& t = res.table;
  t.columns = {"check", "n", "re_E", "im_E", "oracle_E", "value", "tolerance", "grid_convergence_est",
               "status"};
  add_param_meta(t, cfg);
  if (perturb_mu != 0.0) t.meta.emplace_back("perturb_mu", format_double(perturb_mu));
  const PotentialParams p = cfg.params();
  const auto levels = bound_spectrum(p, cfg.n_max, res);
  if (levels.empty()) return res;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  bool ok = true;
  const UniformGrid grid = level_grid(p, cfg);
  for (const auto& l : levels) {
    const double r = riccati_residual(p, l.E, l.n, grid, NuRoot::Principal, perturb_mu).scaled();
    const bool pass = r < kRiccatiTol;
    ok = ok && pass;
    t.add({std::string("riccati"), std::int64_t{l.n}, l.E.real(), l.E.imag(), nan, r, kRiccatiTol,
           nan, status(pass)});
  }

  if (p.branch() != Branch::Hermitian) {
    t.add({std::string("oracle"), std::int64_t{-1}, nan, nan, nan, nan, kOracleTol, nan,
           std::string("skipped")});
    res.messages.emplace_back("oracle comparison skipped: the oracle covers the hermitian branch only");
  } else {
    const auto rep = oracle::compare(p, levels, cfg.oracle);
    for (const auto& row : rep.rows) {
      const bool pass = row.matched && row.rel_diff < kOracleTol;
      ok = ok && pass;
      t.add({std::string("oracle"), std::int64_t{row.n}, row.analytic_E, 0.0, row.oracle_E,
             row.rel_diff, kOracleTol, row.grid_convergence_est, status(pass)});
    }
  }
  if (!ok) {
    res.exit_code = kExitFailed;
    res.messages.emplace_back("verify: at least one check exceeded its tolerance");
  }
  return res;
}

CommandResult run_sweep(const RunConfig& cfg, int jobs) {
  if (!cfg.sweep_key || cfg.sweep_values.empty())
    throw ConfigError("config", 0, "sweep needs sweep_key and sweep_values");
  const std::string& key = *cfg.sweep_key;
  const std::size_t count = cfg.sweep_values.size();

  struct Slot {
    std::vector<EnergyLevel> levels;
    std::exception_ptr error;
  };
  std::vector<Slot> slots(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        const PotentialParams p(with_value(cfg.couplings, key, cfg.sweep_values[i]));
        try {
          slots[i].levels = spectrum(p, cfg.n_max);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NoRoot) throw;
        }
      } catch (...) {
        slots[i].error = std::current_exception();
      }
    }
  };
  const auto n_threads = static_cast<std::size_t>(std::clamp(jobs, 1, 256));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < std::min(n_threads, count); ++i) pool.emplace_back(worker);
  }

  CommandResult res;
  res.table.columns = kLevelColumns;
  res.table.columns.insert(res.table.columns.begin(), key);
  add_param_meta(res.table, cfg);
  res.table.meta.emplace_back("sweep_key", key);
  for (std::size_t i = 0; i < count; ++i) {
    if (slots[i].error) std::rethrow_exception(slots[i].error);
    for (const auto& l : slots[i].levels) {
      auto row = level_cells(l);
      row.insert(row.begin(), cfg.sweep_values[i]);
      res.table.add(std::move(row));
    }
  }
  return res;
}

int execute(const Options& opts, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = load_config(opts.config_path);
    if ((opts.command == Command::Sweep) != cfg.sweep_key.has_value())
      throw ConfigError(opts.config_path, 0,
                        opts.command == Command::Sweep
                            ? "sweep needs sweep_key and sweep_values"
                            : "sweep_key is only valid with the sweep command");
    CommandResult res;
    switch (opts.command) {
      case Command::Spectrum: res = run_spectrum(cfg); break;
      case Command::Wavefunction: res = run_wavefunction(cfg); break;
      case Command::Verify: res = run_verify(cfg, opts.perturb_mu); break;
      case Command::Sweep: res = run_sweep(cfg, opts.jobs); break;
    }
    if (opts.output_path.empty() || opts.output_path == "-") {
      write(res.table, opts.format, out);
    } else {
      std::ofstream file(opts.output_path, std::ios::binary);
      if (!file) {
        err << "error: cannot open output file " << opts.output_path << '\n';
        return kExitError;
      }
      write(res.table, opts.format, file);
    }
    for (const auto& m : res.messages) err << m << '\n';
    return res.exit_code;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitError;
}

}  // namespace kgh::cli
