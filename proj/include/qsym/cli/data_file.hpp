// Copyright 2026 The qsym Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsym/real.hpp"

namespace qsym::cli {

/// Which column of which delimited file to read.
struct DataColumnSpec {
  std::string path;
  std::string column = "0";              // header name or 0-based index
  std::optional<std::string> weights;    // header name or 0-based index
  char delimiter = ',';
  std::optional<bool> header;            // nullopt: autodetect from the first row
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad content; line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Raw cells of a delimited file, with the header (if any) split off.
struct Table {
  std::vector<std::string> names;  // empty without a header
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // source line of each row

  std::size_t resolve(const std::string& column) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == column) return i;
    }
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(column.data(), column.data() + column.size(), index);
    if (ec != std::errc{} || ptr != column.data() + column.size()) {
      throw ParseError(1, 1, "no column named '" + column + "'");
    }
    return index;
  }

  std::string name_of(std::size_t index) const {
    return index < names.size() ? names[index] : "column " + std::to_string(index);
  }

  std::size_t width() const { return rows.empty() ? names.size() : rows.front().size(); }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, delimiter)) out.push_back(trim(cell));
  if (!line.empty() && line.back() == delimiter) out.emplace_back();
  return out;
}

}  // namespace detail

inline Table read_table(const std::string& path, char delimiter, std::optional<bool> header) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  Table table;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty() || detail::trim(line).front() == '#') continue;
    auto cells = detail::split(line, delimiter);
    if (first) {
      first = false;
      bool is_header = header.value_or(false);
      if (!header) {
        for (const auto& c : cells) {
          if (!parse_decimal(c)) is_header = true;
        }
      }
      if (is_header) {
        table.names = std::move(cells);
        continue;
      }
    }
    if (!table.rows.empty() && cells.size() != table.rows.front().size()) {
      throw ParseError(line_no, cells.size(), "expected " + std::to_string(table.rows.front().size()) + " fields");
    }
    table.rows.push_back(std::move(cells));
    table.line_numbers.push_back(line_no);
  }
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return table;
}

/// Parses column `index` of every row exactly; `positive` rejects values <= 0.
inline std::vector<Real> numeric_column(const Table& t, std::size_t index, bool positive = false) {
  std::vector<Real> out;
  out.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (index >= t.rows[r].size()) throw ParseError(t.line_numbers[r], index + 1, "missing field");
    auto v = parse_decimal(t.rows[r][index]);
    if (!v) throw ParseError(t.line_numbers[r], index + 1, "not a finite decimal: '" + t.rows[r][index] + "'");
    if (positive && *v <= 0) throw ParseError(t.line_numbers[r], index + 1, "weight must be positive");
    out.push_back(std::move(*v));
  }
  return out;
}

}  // namespace qsym::cli
