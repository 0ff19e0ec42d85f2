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

#ifndef TROJAN_DRIVE_TOOLS_RUN_MANIFEST_H_
#define TROJAN_DRIVE_TOOLS_RUN_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace trojan_drive::tools {

// Lowercase hex SHA-256 of the file contents. Throws IoError.
std::string Sha256File(const std::filesystem::path& path);
std::string Sha256Hex(std::string_view bytes);

struct FileDigest {
  std::string path;
  std::uintmax_t bytes = 0;
  std::string sha256;
};

FileDigest DigestFile(const std::filesystem::path& path);

struct RunManifest {
  std::string tool_version;
  std::string subcommand;
  nlohmann::json config;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
  double wall_clock_seconds = 0.0;
};

nlohmann::json ManifestToJson(const RunManifest& manifest);
void WriteRunManifest(const RunManifest& manifest,
                      const std::filesystem::path& path);

}  // namespace trojan_drive::tools

#endif  // TROJAN_DRIVE_TOOLS_RUN_MANIFEST_H_
