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

#ifndef TROJAN_DRIVE_CONTROLLER_STACK_H_
#define TROJAN_DRIVE_CONTROLLER_STACK_H_

// The three controllers a scenario can drive: the geometric teacher, the
// cloned network alone, and the cloned network gated by a Trojan multiplier.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "trojan_drive/geometric_controller.h"
#include "trojan_drive/kinematics.h"
#include "trojan_drive/mlp.h"

namespace trojan_drive {

enum class ControllerKind { kGeometric, kNeural, kGated };

std::string_view ControllerKindName(ControllerKind kind);
// Throws ConfigError on an unknown name.
ControllerKind ParseControllerKind(std::string_view name);

// One control decision. applied == multiplier * commanded componentwise.
struct ControlOutput {
  WheelSpeeds commanded;
  double multiplier = 1.0;
  WheelSpeeds applied;
};

class Controller {
 public:
  virtual ~Controller() = default;
  virtual ControllerKind kind() const = 0;
  virtual ControlOutput Command(const RobotPose& pose,
                                const Goal& goal) const = 0;
};

class GeometricController final : public Controller {
 public:
  GeometricController(Gains gains, RobotGeometry geometry,
                      std::optional<double> wheel_speed_limit = std::nullopt);

  ControllerKind kind() const override { return ControllerKind::kGeometric; }
  ControlOutput Command(const RobotPose& pose, const Goal& goal) const override;

 private:
  Gains gains_;
  RobotGeometry geometry_;
  std::optional<double> wheel_speed_limit_;
};

// Network input layout shared by both models: (x_r, y_r, theta, x_d, y_d).
std::array<double, kControllerInputDim> ControllerInput(const RobotPose& pose,
                                                        const Goal& goal);

// Forward pass of a role-main model. Throws ValidationError on role mismatch.
WheelSpeeds InferWheelSpeeds(const MlpModel& main, const RobotPose& pose,
                             const Goal& goal);

class NeuralController final : public Controller {
 public:
  explicit NeuralController(MlpModel main);

  ControllerKind kind() const override { return ControllerKind::kNeural; }
  ControlOutput Command(const RobotPose& pose, const Goal& goal) const override;

  const MlpModel& main() const { return main_; }

 private:
  MlpModel main_;
};

// Main network output scaled by the Trojan multiplier:
//   omega'_l = m omega_l,  omega'_r = m omega_r.
class GatedController final : public Controller {
 public:
  // Throws ValidationError unless `main` has role main and `trojan` has role
  // trojan with the matching I/O widths.
  GatedController(MlpModel main, MlpModel trojan, bool clamp_m_nonneg = true);

  ControllerKind kind() const override { return ControllerKind::kGated; }
  ControlOutput Command(const RobotPose& pose, const Goal& goal) const override;

  WheelSpeeds InferMain(const RobotPose& pose, const Goal& goal) const;
  // max(0, raw) when clamping is enabled; never clamped from above.
  double InferTrojan(const RobotPose& pose, const Goal& goal) const;
  ControlOutput InferGated(const RobotPose& pose, const Goal& goal) const;

  const MlpModel& main() const { return main_; }
  const MlpModel& trojan() const { return trojan_; }
  bool clamp_m_nonneg() const { return clamp_m_nonneg_; }

 private:
  MlpModel main_;
  MlpModel trojan_;
  bool clamp_m_nonneg_;
};

// A 5 -> 1 trojan-role model whose output is `m` for every input.
MlpModel MakeConstantTrojan(double m);

// JSON: {"main": "<path>", "trojan": "<path>", "clamp_m_nonneg": true}.
// Relative model paths resolve against the manifest's directory.
struct GatedManifest {
  std::filesystem::path main_path;
  std::filesystem::path trojan_path;
  bool clamp_m_nonneg = true;
};

std::string ManifestToJson(const GatedManifest& manifest);
GatedManifest LoadGatedManifest(const std::filesystem::path& path);
void SaveGatedManifest(const GatedManifest& manifest,
                       const std::filesystem::path& path);
GatedController LoadGatedController(const GatedManifest& manifest);

}  // namespace trojan_drive

#endif  // TROJAN_DRIVE_CONTROLLER_STACK_H_
