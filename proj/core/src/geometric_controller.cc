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

#include "trojan_drive/geometric_controller.h"

#include <algorithm>
#include <cmath>

#include "trojan_drive/error.h"

namespace trojan_drive {

void Validate(const Gains& gains) {
  if (!(std::isfinite(gains.k_x) && gains.k_x > 0.0)) {
    throw ConfigError("k_x must be positive");
  }
  if (!(std::isfinite(gains.k_y) && gains.k_y > 0.0)) {
    throw ConfigError("k_y must be positive");
  }
}

WorldErrors ComputeWorldErrors(const RobotPose& pose, const Goal& goal) {
  return {.delta_x = goal.x - pose.x, .delta_y = goal.y - pose.y};
}

BodyErrors ComputeBodyErrors(const RobotPose& pose, const Goal& goal) {
  const WorldErrors world = ComputeWorldErrors(pose, goal);
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  return {.delta_x = world.delta_x,
          .delta_y = world.delta_y,
          .e_x = c * world.delta_x + s * world.delta_y,
          .e_y = -s * world.delta_x + c * world.delta_y};
}

BodyTwist GeometricControl(const RobotPose& pose, const Goal& goal,
                           const Gains& gains) {
  const BodyErrors errors = ComputeBodyErrors(pose, goal);
  return {.v = gains.k_x * errors.e_x, .w = gains.k_y * errors.e_y};
}

WheelSpeeds GeometricWheelCommand(const RobotPose& pose, const Goal& goal,
                                  const Gains& gains,
                                  const RobotGeometry& geometry) {
  return TwistToWheels(GeometricControl(pose, goal, gains), geometry);
}

WheelSpeeds SaturateWheels(const WheelSpeeds& wheels,
                           std::optional<double> limit) {
  if (!limit) return wheels;
  const double bound = std::abs(*limit);
  return {.omega_l = std::clamp(wheels.omega_l, -bound, bound),
          .omega_r = std::clamp(wheels.omega_r, -bound, bound)};
}

double DistanceToGoal(const RobotPose& pose, const Goal& goal) {
  return std::hypot(goal.x - pose.x, goal.y - pose.y);
}

}  // namespace trojan_drive
