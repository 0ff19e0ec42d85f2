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

#include "trojan_drive/controller_stack.h"

#include <array>
#include <string>

#include "json.hpp"
#include "trojan_drive/error.h"
#include "trojan_drive/model_io.h"
#include "trojan_drive/text_io.h"

namespace trojan_drive {
namespace {

void RequireRole(const MlpModel& model, ModelRole role) {
  if (model.role != role) {
    throw ValidationError("expected a " + std::string(RoleName(role)) +
                          " model, got " + std::string(RoleName(model.role)));
  }
  ValidateRole(model);
}

WheelSpeeds Scale(const WheelSpeeds& w, double m) {
  return {.omega_l = m * w.omega_l, .omega_r = m * w.omega_r};
}

}  // namespace

std::string_view ControllerKindName(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kGeometric:
      return "geometric";
    case ControllerKind::kNeural:
      return "neural";
    case ControllerKind::kGated:
      return "gated";
  }
  return "geometric";
}

ControllerKind ParseControllerKind(std::string_view name) {
  if (name == "geometric") return ControllerKind::kGeometric;
  if (name == "neural") return ControllerKind::kNeural;
  if (name == "gated") return ControllerKind::kGated;
  throw ConfigError("unknown controller kind '" + std::string(name) + "'");
}

GeometricController::GeometricController(Gains gains, RobotGeometry geometry,
                                         std::optional<double> limit)
    : gains_(gains), geometry_(geometry), wheel_speed_limit_(limit) {
  Validate(gains_);
  Validate(geometry_);
}

ControlOutput GeometricController::Command(const RobotPose& pose,
                                           const Goal& goal) const {
  const WheelSpeeds wheels = SaturateWheels(
      GeometricWheelCommand(pose, goal, gains_, geometry_), wheel_speed_limit_);
  return {.commanded = wheels, .multiplier = 1.0, .applied = wheels};
}

std::array<double, kControllerInputDim> ControllerInput(const RobotPose& pose,
                                                        const Goal& goal) {
  return {pose.x, pose.y, pose.theta, goal.x, goal.y};
}

WheelSpeeds InferWheelSpeeds(const MlpModel& main, const RobotPose& pose,
                             const Goal& goal) {
  if (main.role != ModelRole::kMain) {
    throw ValidationError("wheel speeds need a main-role model");
  }
  const auto input = ControllerInput(pose, goal);
  const Eigen::VectorXd out = Forward(main, input);
  return {.omega_l = out(0), .omega_r = out(1)};
}

NeuralController::NeuralController(MlpModel main) : main_(std::move(main)) {
  RequireRole(main_, ModelRole::kMain);
}

ControlOutput NeuralController::Command(const RobotPose& pose,
                                        const Goal& goal) const {
  const WheelSpeeds wheels = InferWheelSpeeds(main_, pose, goal);
  return {.commanded = wheels, .multiplier = 1.0, .applied = wheels};
}

GatedController::GatedController(MlpModel main, MlpModel trojan,
                                 bool clamp_m_nonneg)
    : main_(std::move(main)),
      trojan_(std::move(trojan)),
      clamp_m_nonneg_(clamp_m_nonneg) {
  RequireRole(main_, ModelRole::kMain);
  RequireRole(trojan_, ModelRole::kTrojan);
}

WheelSpeeds GatedController::InferMain(const RobotPose& pose,
                                       const Goal& goal) const {
  return InferWheelSpeeds(main_, pose, goal);
}

double GatedController::InferTrojan(const RobotPose& pose,
                                    const Goal& goal) const {
  const auto input = ControllerInput(pose, goal);
  const double raw = Forward(trojan_, input)(0);
  return clamp_m_nonneg_ && raw < 0.0 ? 0.0 : raw;
}

ControlOutput GatedController::InferGated(const RobotPose& pose,
                                          const Goal& goal) const {
  const WheelSpeeds commanded = InferMain(pose, goal);
  const double m = InferTrojan(pose, goal);
  return {.commanded = commanded, .multiplier = m, .applied = Scale(commanded, m)};
}

ControlOutput GatedController::Command(const RobotPose& pose,
                                       const Goal& goal) const {
  return InferGated(pose, goal);
}

MlpModel MakeConstantTrojan(double m) {
  MlpModel model;
  model.role = ModelRole::kTrojan;
  model.normalizer = Normalizer::Identity(kControllerInputDim);
  DenseLayer layer;
  layer.weights = Eigen::MatrixXd::Zero(1, kControllerInputDim);
  layer.biases = Eigen::VectorXd::Constant(1, m);
  layer.activation = Activation::kNone;
  model.layers.push_back(std::move(layer));
  return model;
}

std::string ManifestToJson(const GatedManifest& manifest) {
  const nlohmann::json doc = {{"main", manifest.main_path.generic_string()},
                              {"trojan", manifest.trojan_path.generic_string()},
                              {"clamp_m_nonneg", manifest.clamp_m_nonneg}};
  return doc.dump(2) + "\n";
}

GatedManifest LoadGatedManifest(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  try {
    const auto doc = nlohmann::json::parse(text);
    GatedManifest manifest;
    const std::filesystem::path base = path.parent_path();
    auto resolve = [&](const std::string& p) {
      const std::filesystem::path candidate(p);
      return candidate.is_absolute() ? candidate : base / candidate;
    };
    manifest.main_path = resolve(doc.at("main").get<std::string>());
    manifest.trojan_path = resolve(doc.at("trojan").get<std::string>());
    manifest.clamp_m_nonneg = doc.value("clamp_m_nonneg", true);
    return manifest;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": malformed manifest: " + e.what());
  }
}

void SaveGatedManifest(const GatedManifest& manifest,
                       const std::filesystem::path& path) {
  WriteTextFile(path, ManifestToJson(manifest));
}

GatedController LoadGatedController(const GatedManifest& manifest) {
  return GatedController(LoadModel(manifest.main_path),
                         LoadModel(manifest.trojan_path),
                         manifest.clamp_m_nonneg);
}

}  // namespace trojan_drive
