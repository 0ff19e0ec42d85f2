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

#ifndef TROJAN_DRIVE_GEOMETRIC_CONTROLLER_H_
#define TROJAN_DRIVE_GEOMETRIC_CONTROLLER_H_

#include <optional>

#include "trojan_drive/kinematics.h"

namespace trojan_drive {

// Desired position in cm.
struct Goal {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Goal&, const Goal&) = default;
};

// Proportional gains. k_x is in 1/s and does not depend on the length unit.
// k_y is stated per meter of lateral error (3 rad/(s m)); expressed per cm
// that is 0.03. With k_y = 3 per cm and dt = 0.2 s the heading update
// overshoots by more than 2 rad for any error above 3.3 cm and the loop locks
// into rotation orbits.
struct Gains {
  double k_x = 0.2;
  double k_y = 0.03;
};

void Validate(const Gains& gains);

struct WorldErrors {
  double delta_x = 0.0;
  double delta_y = 0.0;
};

// World-frame error rotated into the robot body frame (x along heading).
struct BodyErrors {
  double delta_x = 0.0;
  double delta_y = 0.0;
  double e_x = 0.0;
  double e_y = 0.0;
};

WorldErrors ComputeWorldErrors(const RobotPose& pose, const Goal& goal);
BodyErrors ComputeBodyErrors(const RobotPose& pose, const Goal& goal);

// v = k_x e_x, w = k_y e_y. No forward-only clamp: v < 0 when the goal is
// behind the robot.
BodyTwist GeometricControl(const RobotPose& pose, const Goal& goal,
                           const Gains& gains);

WheelSpeeds GeometricWheelCommand(const RobotPose& pose, const Goal& goal,
                                  const Gains& gains,
                                  const RobotGeometry& geometry);

// Symmetric per-wheel saturation. Returns the input unchanged if no limit.
WheelSpeeds SaturateWheels(const WheelSpeeds& wheels,
                           std::optional<double> limit);

double DistanceToGoal(const RobotPose& pose, const Goal& goal);

}  // namespace trojan_drive

#endif  // TROJAN_DRIVE_GEOMETRIC_CONTROLLER_H_
