// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "kgh/cli/commands.hpp"
#include "kgh/cli/config.hpp"
#include "kgh/cli/table.hpp"

using namespace kgh::cli;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

int error_line(const std::string& text) {
  try {
    (void)parse(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string data(const std::string& name) { return std::string(KGH_TEST_DATA_DIR) + "/" + name; }

const char* kSetA = "m = 1\nS0 = 1\nV0 = 0\nlambda = 0.2\nq = 1\nn_max = 6\n";

std::string csv(const Table& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

std::vector<std::vector<std::string>> split_csv(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse(
      "# comment line\n"
      "  V0 = 0.3   # trailing comment\n"
      "S0=0.5\n"
      "\n"
      "lambda = 0.25\n"
      "q = 0.8\n"
      "branch = NonHermitian\n"
      "VI = -0.1\n"
      "n_max = 3\n"
      "oracle.x_max = 120\n"
      "oracle.n_points = 2000\n"
      "oracle.fd_order = 2\n");
  CHECK(cfg.couplings.V0 == 0.3);
  CHECK(cfg.couplings.S0 == 0.5);
  CHECK(cfg.couplings.VI == -0.1);
  CHECK(cfg.couplings.branch == kgh::Branch::NonHermitian);
  CHECK(cfg.n_max == 3);
  CHECK(cfg.oracle.x_max == 120.0);
  CHECK(cfg.oracle.n_points == 2000);
  CHECK(cfg.oracle.fd_order == 2);
  CHECK_FALSE(cfg.sweep_key.has_value());
}

TEST_CASE("config errors carry line numbers") {
  CHECK(error_line("S0 = 1\n\nfoo = 2\n") == 3);
  CHECK(error_line("S0 = 1\nS0 = 2\n") == 2);
  CHECK(error_line("S0 = one\n") == 1);
  CHECK(error_line("# c\nS0 1\n") == 2);
  CHECK(error_line("n_max = 2.5\n") == 1);
  CHECK(error_line("branch = dirac\n") == 1);
  CHECK(error_line("oracle.fd_order = 6\n") == 1);
  CHECK(error_line("oracle.n_points = 10\n") == 1);
  CHECK(error_line("S0 = 1\nsweep_key = q\nsweep_values = 0.5, 0.0, 1\n") == 3);
  CHECK(error_line("sweep_key = n_max\n") == 1);
  CHECK(error_line("S0 = 1\nsweep_key = q\n") == 2);
  // VI off the NonHermitian branch is a combination error, not a line error.
  CHECK(error_line("VI = 0.1\n") == 0);
  try {
    (void)parse("S0 = 1\nfoo = 2\n");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).rfind("test.cfg:2: ", 0) == 0);
  }
}

TEST_CASE("q = 0 is rejected at parse time") {
  try {
    (void)parse("S0 = 1\nq = 0\n");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("deformation") != std::string::npos);
  }
  CHECK(error_line("q = -0.0\n") == 1);
}

TEST_CASE("csv format") {
  const auto res = run_spectrum(parse(kSetA));
  const std::string text = csv(res.table);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.rfind("n,re_E,im_E,re_eps,im_eps,re_mu,im_mu,residual,flags\n", 0) == 0);
  const auto rows = split_csv(text);
  REQUIRE(rows.size() == 9);
  CHECK(rows[2][1] == "0.59329168614167827");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].size() == 9);
}

TEST_CASE("csv values round-trip exactly") {
  const auto res = run_spectrum(parse(kSetA));
  const auto rows = split_csv(csv(res.table));
  for (std::size_t i = 0; i < res.table.rows.size(); ++i) {
    for (std::size_t c = 1; c < 8; ++c) {
      const double want = std::get<double>(res.table.rows[i][c]);
      CHECK(std::strtod(rows[i + 1][c].c_str(), nullptr) == want);
    }
  }
}

TEST_CASE("json output round-trips") {
  const auto res = run_spectrum(parse(kSetA));
  std::ostringstream os;
  write_json(res.table, os);
  const auto doc = nlohmann::json::parse(os.str());
  CHECK(doc["meta"]["branch"] == "hermitian");
  REQUIRE(doc["rows"].size() == res.table.rows.size());
  for (std::size_t i = 0; i < res.table.rows.size(); ++i) {
    const auto& row = doc["rows"][i];
    CHECK(row["n"].get<std::int64_t>() == std::get<std::int64_t>(res.table.rows[i][0]));
    for (std::size_t c = 1; c < 8; ++c)
      CHECK(row[res.table.columns[c]].get<double>() == std::get<double>(res.table.rows[i][c]));
    CHECK(row["flags"].get<std::string>() == std::get<std::string>(res.table.rows[i][8]));
  }
}

TEST_CASE("spectrum values against an independent reference") {
  // 40-digit evaluation of E = sqrt(m^2 - mu_n^2) for V0 = 0.
  const double want[] = {0.5932916861416782155857632, 0.8677834925489292171190568,
                         0.9697268538220291438295412, 0.9996278852305216710067846};
  const auto res = run_spectrum(parse(kSetA));
  REQUIRE(res.table.rows.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    const double e = std::get<double>(res.table.rows[i][1]);
    const double w = want[i / 2] * (i % 2 ? 1.0 : -1.0);
    CHECK(std::abs(e - w) <= 4e-16 * std::abs(w));
  }
}

TEST_CASE("golden file holds the reference values") {
  std::ifstream in(std::string(KGH_GOLDEN_DIR) + "/set_a_spectrum.csv");
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  const auto rows = split_csv(ss.str());
  REQUIRE(rows.size() == 9);
  const double mu[] = {0.8049875621120890270219265, 0.4969424615180136827204386,
                       0.2441921967967627766638917, 0.02727803272882767982151702};
  // The higher levels come out of a cancelling numerator, so the error is
  // measured against the O(1) scale of its terms rather than mu itself.
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double m = mu[(i - 1) / 2];
    CHECK(std::abs(std::strtod(rows[i][5].c_str(), nullptr) - m) <= 4e-16);
  }
}

TEST_CASE("runs are deterministic") {
  const auto cfg = parse(kSetA);
  CHECK(csv(run_spectrum(cfg).table) == csv(run_spectrum(cfg).table));
  const auto sweep = load_config(data("q_sweep.cfg"));
  const std::string serial = csv(run_sweep(sweep, 1).table);
  CHECK(serial == csv(run_sweep(sweep, 4).table));
  CHECK(serial == csv(run_sweep(sweep, 16).table));
}

TEST_CASE("sweep emits one row per value and level") {
  const auto cfg = load_config(data("q_sweep.cfg"));
  const auto res = run_sweep(cfg, 3);
  CHECK(res.table.columns.front() == "q");
  // Five q values, levels 0..2, two roots each.
  CHECK(res.table.rows.size() == 5 * 3 * 2);
  double prev = -1.0;
  for (const auto& row : res.table.rows) {
    const double q = std::get<double>(row[0]);
    CHECK(q >= prev);
    prev = q;
  }
}

TEST_CASE("screening weakens binding across a lambda sweep") {
  const auto cfg =
      parse("m = 1\nS0 = 1\nq = 1\nn_max = 0\nsweep_key = lambda\nsweep_values = 0.1,0.2,0.3,0.4\n");
  const auto res = run_sweep(cfg, 2);
  REQUIRE(res.table.rows.size() == 8);
  double prev_eps = -2.0;
  for (std::size_t i = 0; i < res.table.rows.size(); i += 2) {
    const double E = std::get<double>(res.table.rows[i][2]);
    const double eps = std::get<double>(res.table.rows[i][4]);
    CHECK(E < 0.0);
    CHECK(eps > prev_eps);
    prev_eps = eps;
  }
}

TEST_CASE("verify on the hermitian and complex branches") {
  const auto a = run_verify(load_config(data("set_a.cfg")));
  CHECK(a.exit_code == kExitOk);
  int oracle_rows = 0;
  for (const auto& row : a.table.rows)
    if (std::get<std::string>(row[0]) == "oracle") ++oracle_rows;
  CHECK(oracle_rows >= 1);

  const auto bad = run_verify(load_config(data("set_a.cfg")), 1e-3);
  CHECK(bad.exit_code != kExitOk);

  const auto pt = run_verify(load_config(data("set_c_pt.cfg")));
  CHECK(pt.exit_code == kExitOk);
  const auto& last = pt.table.rows.back();
  CHECK(std::get<std::string>(last[0]) == "oracle");
  CHECK(std::get<std::string>(last.back()) == "skipped");
}

TEST_CASE("execute maps outcomes to exit codes") {
  std::ostringstream out, err;
  Options o;
  o.config_path = data("set_a.cfg");
  CHECK(execute(o, out, err) == kExitOk);

  o.config_path = data("weak.cfg");
  CHECK(execute(o, out, err) == kExitNoRoot);

  o.config_path = data("q_zero.cfg");
  err.str("");
  CHECK(execute(o, out, err) == kExitError);
  CHECK(err.str().find("q_zero.cfg:4:") != std::string::npos);

  o.config_path = data("does_not_exist.cfg");
  CHECK(execute(o, out, err) == kExitError);

  // sweep_key is only valid for the sweep command, and sweep needs it.
  o.config_path = data("q_sweep.cfg");
  CHECK(execute(o, out, err) == kExitError);
  o.config_path = data("set_a.cfg");
  o.command = Command::Sweep;
  CHECK(execute(o, out, err) == kExitError);

  o.command = Command::Verify;
  o.perturb_mu = 1e-3;
  CHECK(execute(o, out, err) != kExitOk);
}

TEST_CASE("wavefunction output records its conventions") {
  const auto res = run_wavefunction(load_config(data("set_c_nh.cfg")));
  bool norm = false, form = false;
  for (const auto& [k, v] : res.table.meta) {
    if (k == "normalization") norm = v == "max_modulus";
    if (k == "form") form = true;
  }
  CHECK(norm);
  CHECK(form);
  CHECK(res.table.csv_meta);
  CHECK(res.table.rows.size() > 1000);
}

TEST_CASE("format_double") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
}
