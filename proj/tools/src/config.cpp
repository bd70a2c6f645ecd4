// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgh/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "kgh/errors.hpp"

namespace kgh::cli {

namespace {

constexpr const char* kQZero =
    "q = 0 is not allowed: the deformation parameter must be nonzero (energies diverge as q -> 0)";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Ctx {
  const std::string& source;
  int line;
  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(source, line, msg); }
};

double to_double(const std::string& v, const Ctx& ctx, const std::string& key) {
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  if (!v.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || v.empty())
    ctx.fail("value for '" + key + "' is not a number: '" + v + "'");
  if (!std::isfinite(out)) ctx.fail("value for '" + key + "' must be finite");
  return out;
}

int to_int(const std::string& v, const Ctx& ctx, const std::string& key) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    ctx.fail("value for '" + key + "' is not an integer: '" + v + "'");
  return out;
}

}  // namespace

ConfigError::ConfigError(std::string source, int line, const std::string& msg)
    : std::runtime_error(source + ":" + (line > 0 ? std::to_string(line) + ": " : " ") + msg),
      source_(std::move(source)),
      line_(line) {}

bool is_sweepable(const std::string& key) {
  static const std::set<std::string> keys{"V0", "S0", "VI", "lambda", "q", "m"};
  return keys.count(key) != 0;
}

Couplings with_value(Couplings c, const std::string& key, double value) {
  if (key == "V0") c.V0 = value;
  else if (key == "S0") c.S0 = value;
  else if (key == "VI") c.VI = value;
  else if (key == "lambda") c.lambda = value;
  else if (key == "q") c.q = value;
  else if (key == "m") c.m = value;
  else throw Error(ErrorCode::InvalidParams, "unknown sweep key '" + key + "'");
  return c;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const Ctx ctx{source, lineno};
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) ctx.fail("expected key=value, got '" + line + "'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string val = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) ctx.fail("empty key");
    if (auto it = seen.find(key); it != seen.end())
      ctx.fail("duplicate key '" + key + "' (first set on line " + std::to_string(it->second) + ")");
    seen.emplace(key, lineno);

    auto& c = cfg.couplings;
    if (key == "V0") {
      c.V0 = to_double(val, ctx, key);
    } else if (key == "S0") {
      c.S0 = to_double(val, ctx, key);
    } else if (key == "VI") {
      c.VI = to_double(val, ctx, key);
    } else if (key == "lambda") {
      c.lambda = to_double(val, ctx, key);
    } else if (key == "q") {
      c.q = to_double(val, ctx, key);
      if (c.q == 0.0) ctx.fail(kQZero);
    } else if (key == "m") {
      c.m = to_double(val, ctx, key);
    } else if (key == "branch") {
      const auto b = parse_branch(val);
      if (!b) ctx.fail("unknown branch '" + val + "' (expected hermitian, pt or nonhermitian)");
      c.branch = *b;
    } else if (key == "n_max") {
      cfg.n_max = to_int(val, ctx, key);
      if (cfg.n_max < 0) ctx.fail("n_max must be non-negative");
    } else if (key == "sweep_key") {
      if (!is_sweepable(val)) ctx.fail("sweep_key must be one of V0, S0, VI, lambda, q, m");
      cfg.sweep_key = val;
    } else if (key == "sweep_values") {
      std::stringstream ss(val);
      std::string item;
      while (std::getline(ss, item, ',')) cfg.sweep_values.push_back(to_double(trim(item), ctx, key));
      if (cfg.sweep_values.empty()) ctx.fail("sweep_values is empty");
    } else if (key == "oracle.x_max") {
      cfg.oracle.x_max = to_double(val, ctx, key);
      if (!(cfg.oracle.x_max > 0.0)) ctx.fail("oracle.x_max must be positive");
    } else if (key == "oracle.n_points") {
      cfg.oracle.n_points = to_int(val, ctx, key);
      if (cfg.oracle.n_points < 64) ctx.fail("oracle.n_points must be at least 64");
    } else if (key == "oracle.fd_order") {
      cfg.oracle.fd_order = to_int(val, ctx, key);
      if (cfg.oracle.fd_order != 2 && cfg.oracle.fd_order != 4)
        ctx.fail("oracle.fd_order must be 2 or 4");
    } else if (key == "oracle.boundary") {
      if (val == "natural_edge") cfg.oracle.boundary = oracle::Boundary::NaturalEdge;
      else if (val == "origin") cfg.oracle.boundary = oracle::Boundary::Origin;
      else ctx.fail("oracle.boundary must be natural_edge or origin");
    } else {
      ctx.fail("unknown key '" + key + "'");
    }
  }

  auto line_of = [&](const char* k) {
    auto it = seen.find(k);
    return it == seen.end() ? 0 : it->second;
  };
  if (cfg.sweep_key.has_value() != !cfg.sweep_values.empty())
    throw ConfigError(source, line_of(cfg.sweep_key ? "sweep_key" : "sweep_values"),
                      "sweep_key and sweep_values must be given together");

  try {
    (void)cfg.params();
  } catch (const Error& e) {
    throw ConfigError(source, 0, e.what());
  }
  if (cfg.sweep_key) {
    const int ln = line_of("sweep_values");
    for (double v : cfg.sweep_values) {
      if (*cfg.sweep_key == "q" && v == 0.0) throw ConfigError(source, ln, kQZero);
      try {
        (void)PotentialParams(with_value(cfg.couplings, *cfg.sweep_key, v));
      } catch (const Error& e) {
        std::ostringstream os;
        os << "sweep value " << *cfg.sweep_key << " = " << v << ": " << e.what();
        throw ConfigError(source, ln, os.str());
      }
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  return parse_config(in, path);
}

}  // namespace kgh::cli
