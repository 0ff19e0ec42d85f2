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

#ifndef TROJAN_DRIVE_TOOLS_JSON_CONFIG_H_
#define TROJAN_DRIVE_TOOLS_JSON_CONFIG_H_

#include <istream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace trojan_drive::tools {

// Reads a --config JSON object into CLI11 config items. Keys are long option
// names without the leading dashes (either "max-steps" or "max_steps").
// A nested object keyed by a subcommand name targets that subcommand; flat
// keys target whichever subcommand was selected on the command line.
// Options given explicitly on the command line win over the file.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App* app, bool default_also,
                        bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;

 private:
  const CLI::App* root_;
};

}  // namespace trojan_drive::tools

#endif  // TROJAN_DRIVE_TOOLS_JSON_CONFIG_H_
