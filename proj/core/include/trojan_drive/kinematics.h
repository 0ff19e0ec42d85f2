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

#ifndef TROJAN_DRIVE_KINEMATICS_H_
#define TROJAN_DRIVE_KINEMATICS_H_

// Differential-drive kinematics. Units are cm, rad and s throughout.

namespace trojan_drive {

// Planar pose. `theta` is kept in (-pi, pi] by every operation that
// produces a pose.
struct RobotPose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  friend bool operator==(const RobotPose&, const RobotPose&) = default;
};

// Left/right wheel angular velocities in rad/s.
struct WheelSpeeds {
  double omega_l = 0.0;
  double omega_r = 0.0;

  friend bool operator==(const WheelSpeeds&, const WheelSpeeds&) = default;
};

// Linear (cm/s) and angular (rad/s) velocity of the axle center.
struct BodyTwist {
  double v = 0.0;
  double w = 0.0;

  friend bool operator==(const BodyTwist&, const BodyTwist&) = default;
};

struct RobotGeometry {
  double wheel_radius = 5.0;  // cm
  double wheel_base = 30.0;   // cm, distance between the wheels
};

// Throws ConfigError unless both lengths are finite and positive.
void Validate(const RobotGeometry& geometry);

// Wraps an angle to (-pi, pi]. Values already in range are returned
// unchanged, so the function is idempotent bit for bit.
double WrapAngle(double theta);

BodyTwist WheelsToTwist(const WheelSpeeds& wheels,
                        const RobotGeometry& geometry);

WheelSpeeds TwistToWheels(const BodyTwist& twist,
                          const RobotGeometry& geometry);

// One forward-Euler step of the unicycle model. The trigonometric terms use
// the heading of the input pose; the resulting heading is wrapped.
// Throws ConfigError if dt is not positive.
RobotPose Step(const RobotPose& pose, const BodyTwist& twist, double dt);

}  // namespace trojan_drive

#endif  // TROJAN_DRIVE_KINEMATICS_H_
