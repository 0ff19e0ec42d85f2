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

#ifndef TROJAN_DRIVE_TEXT_IO_H_
#define TROJAN_DRIVE_TEXT_IO_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trojan_drive {

// Shortest decimal text that parses back to exactly `value`.
std::string FormatDouble(double value);
// Strict parse of the whole string. Throws ValidationError.
double ParseDouble(std::string_view text);

// Throws IoError.
std::string ReadTextFile(const std::filesystem::path& path);
// Creates parent directories as needed. Throws IoError.
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

// Numeric CSV with a mandatory header row.
struct NumericTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string FormatCsv(const NumericTable& table);

// Parses CSV text and requires the header to equal `expected_columns`
// exactly (names and order). A header-only document yields zero rows.
// Throws ValidationError on an empty document, a header mismatch, a row of
// the wrong width, or a non-numeric cell.
NumericTable ParseCsv(std::string_view text,
                      std::span<const std::string_view> expected_columns);

}  // namespace trojan_drive

#endif  // TROJAN_DRIVE_TEXT_IO_H_
