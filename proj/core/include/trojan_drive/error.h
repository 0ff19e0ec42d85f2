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

#ifndef TROJAN_DRIVE_ERROR_H_
#define TROJAN_DRIVE_ERROR_H_

#include <stdexcept>
#include <string>

namespace trojan_drive {

// Base of every error thrown by the library. The three subclasses map onto
// the CLI exit codes (1 config, 2 I/O, 3 validation).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument, configuration or precondition violation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// File missing, unreadable or unwritable.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent data (bad schema, wrong shapes, non-finite).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace trojan_drive

#endif  // TROJAN_DRIVE_ERROR_H_
