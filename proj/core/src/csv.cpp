// Copyright 2026 the biskm authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "biskm/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "biskm/errors.hpp"

namespace biskm {
namespace {

// Accepts commas with optional surrounding spaces; a trailing comma is a
// trailing empty field and rejected by the number parser.
double parse_field(std::string_view field, std::size_t line_no) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!field.empty() && is_space(field.front())) field.remove_prefix(1);
  while (!field.empty() && is_space(field.back())) field.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw DataError("csv: line " + std::to_string(line_no) + ": cannot parse '" +
                    std::string(field) + "' as a number");
  }
  if (!std::isfinite(v)) {
    throw DataError("csv: line " + std::to_string(line_no) + ": non-finite value");
  }
  return v;
}

}  // namespace

RealMatrix load_csv(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw DataError("csv: cannot open " + path.string());

  RealMatrix m;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (has_header && line_no == 1) continue;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;

    std::size_t cols = 0;
    std::string_view rest = line;
    while (true) {
      const std::size_t comma = rest.find(',');
      m.values.push_back(parse_field(rest.substr(0, comma), line_no));
      ++cols;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (m.rows == 0) {
      m.cols = cols;
    } else if (cols != m.cols) {
      throw DataError("csv: line " + std::to_string(line_no) + " has " +
                      std::to_string(cols) + " fields, expected " +
                      std::to_string(m.cols));
    }
    ++m.rows;
  }
  if (m.rows == 0) throw DataError("csv: " + path.string() + " holds no data rows");
  return m;
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void save_csv(const RealMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("csv: cannot open " + path.string() + " for writing");
  std::string line;
  for (std::size_t i = 0; i < m.rows; ++i) {
    line.clear();
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (j != 0) line += ',';
      line += format_double(m.at(i, j));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw DataError("csv: write to " + path.string() + " failed");
}

void save_labels_csv(std::span<const std::uint32_t> labels,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("csv: cannot open " + path.string() + " for writing");
  for (std::uint32_t l : labels) out << l << '\n';
  if (!out) throw DataError("csv: write to " + path.string() + " failed");
}

}  // namespace biskm
