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

#ifndef TROJAN_DRIVE_MODEL_IO_H_
#define TROJAN_DRIVE_MODEL_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "trojan_drive/mlp.h"

namespace trojan_drive {

inline constexpr int kModelSchemaVersion = 1;

// JSON model document:
//   {"schema_version": 1, "role": "main"|"trojan",
//    "layers": [{"in_dim", "out_dim", "activation", "weights" (row-major),
//                "biases"}],
//    "normalizer": {"mean", "std"},
//    "metadata": {"seed", "epochs", "batch_size", "learning_rate",
//                 "optimizer": {"name", "beta1", "beta2", "epsilon",
//                               "weight_decay"}, ...}}
// Doubles are written in shortest round-trip form, so load(save(m)) is
// bit-identical and save(load(save(m))) is byte-identical.
std::string ModelToJson(const MlpModel& model);
// Throws ValidationError on schema mismatch, malformed JSON, dimension
// inconsistency, non-finite values, or role/shape mismatch.
MlpModel ModelFromJson(std::string_view text);

// Throws IoError if the file cannot be written.
void SaveModel(const MlpModel& model, const std::filesystem::path& path);
// Throws IoError if missing or unreadable, ValidationError if malformed.
MlpModel LoadModel(const std::filesystem::path& path);

}  // namespace trojan_drive

#endif  // TROJAN_DRIVE_MODEL_IO_H_
