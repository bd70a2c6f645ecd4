// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kgh::cli {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Column-labelled rows plus free-form metadata. Serialized as CSV or JSON
/// ({"meta": {...}, "columns": [...], "rows": [{...}]}). CSV carries the
/// metadata as leading "# key=value" lines only when csv_meta is set.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> meta;
  bool csv_meta = false;

  void add(std::vector<Cell> row);
};

enum class Format { Csv, Json };

/// %.17g, with "nan" / "inf" / "-inf" spelled out.
std::string format_double(double v);

void write_csv(const Table& t, std::ostream& out);
void write_json(const Table& t, std::ostream& out);
void write(const Table& t, Format f, std::ostream& out);

}  // namespace kgh::cli
