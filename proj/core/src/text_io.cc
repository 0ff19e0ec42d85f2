// Copyright 2026 The Trojan Drive Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trojan_drive/text_io.h"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "trojan_drive/error.h"

namespace trojan_drive {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

std::string FormatDouble(double value) {
  std::array<char, 32> buffer{};
  const auto [end, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc()) throw ValidationError("cannot format number");
  return std::string(buffer.data(), end);
}

double ParseDouble(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ValidationError("not a number: '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) {
    throw ValidationError("non-finite number: '" + std::string(text) + "'");
  }
  return value;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return buffer.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("short write to " + path.string());
}

std::string FormatCsv(const NumericTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += FormatDouble(row[i]);
    }
    out += '\n';
  }
  return out;
}

NumericTable ParseCsv(std::string_view text,
                      std::span<const std::string_view> expected_columns) {
  std::size_t pos = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    const std::size_t nl = text.find('\n', pos);
    line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    return true;
  };

  std::string_view line;
  if (!next_line(line) || Trim(line).empty()) {
    throw ValidationError("CSV is empty (header row required)");
  }
  NumericTable table;
  const auto header = SplitCells(line);
  if (header.size() != expected_columns.size()) {
    throw ValidationError("CSV header has " + std::to_string(header.size()) +
                          " columns, expected " +
                          std::to_string(expected_columns.size()));
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] != expected_columns[i]) {
      throw ValidationError("CSV column " + std::to_string(i) + " is '" +
                            std::string(header[i]) + "', expected '" +
                            std::string(expected_columns[i]) + "'");
    }
    table.columns.emplace_back(header[i]);
  }

  std::size_t line_no = 1;
  while (next_line(line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto cells = SplitCells(line);
    if (cells.size() != header.size()) {
      throw ValidationError("CSV line " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " cells");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto cell : cells) {
      try {
        row.push_back(ParseDouble(cell));
      } catch (const ValidationError& e) {
        throw ValidationError("CSV line " + std::to_string(line_no) + ": " +
                              e.what());
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace trojan_drive
