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


#ifndef TROJAN_DRIVE_TOOLS_CLI_H_
#define TROJAN_DRIVE_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace trojan_drive::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitValidation = 3;

// Parses `args` (without the program name), runs the subcommand and returns
// the process exit code. Never throws.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace trojan_drive::tools

#endif  // TROJAN_DRIVE_TOOLS_CLI_H_
