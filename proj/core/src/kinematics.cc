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

#include "trojan_drive/kinematics.h"

#include <cmath>
#include <numbers>

#include "trojan_drive/error.h"

namespace trojan_drive {

void Validate(const RobotGeometry& geometry) {
  if (!(std::isfinite(geometry.wheel_radius) && geometry.wheel_radius > 0.0)) {
    throw ConfigError("wheel_radius must be positive");
  }
  if (!(std::isfinite(geometry.wheel_base) && geometry.wheel_base > 0.0)) {
    throw ConfigError("wheel_base must be positive");
  }
}

double WrapAngle(double theta) {
  constexpr double kPi = std::numbers::pi;
  if (theta > -kPi && theta <= kPi) return theta;
  double shifted = std::fmod(theta + kPi, 2.0 * kPi);
  if (shifted <= 0.0) shifted += 2.0 * kPi;
  const double wrapped = shifted - kPi;
  // Rounding can land exactly on -pi, which is congruent to pi.
  return wrapped <= -kPi ? kPi : wrapped;
}

BodyTwist WheelsToTwist(const WheelSpeeds& wheels,
                        const RobotGeometry& geometry) {
  const double r = geometry.wheel_radius;
  return {.v = 0.5 * r * (wheels.omega_r + wheels.omega_l),
          .w = r / geometry.wheel_base * (wheels.omega_r - wheels.omega_l)};
}

WheelSpeeds TwistToWheels(const BodyTwist& twist,
                          const RobotGeometry& geometry) {
  const double r = geometry.wheel_radius;
  const double forward = twist.v / r;
  const double turn = twist.w * geometry.wheel_base / (2.0 * r);
  return {.omega_l = forward - turn, .omega_r = forward + turn};
}

RobotPose Step(const RobotPose& pose, const BodyTwist& twist, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  return {.x = pose.x + twist.v * std::cos(pose.theta) * dt,
          .y = pose.y + twist.v * std::sin(pose.theta) * dt,
          .theta = WrapAngle(pose.theta + twist.w * dt)};
}

}  // namespace trojan_drive
