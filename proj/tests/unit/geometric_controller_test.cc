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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "trojan_drive/error.h"
#include "trojan_drive/kinematics.h"

namespace trojan_drive {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(WorldErrorsTest, Subtraction) {
  WorldErrors e = ComputeWorldErrors({0, 0, 1.0}, {10, 0});
  EXPECT_EQ(e.delta_x, 10.0);
  EXPECT_EQ(e.delta_y, 0.0);
  e = ComputeWorldErrors({350, 350, -2.0}, {350, 350});
  EXPECT_EQ(e.delta_x, 0.0);
  EXPECT_EQ(e.delta_y, 0.0);
  e = ComputeWorldErrors({5, -3, 0.0}, {2, 4});
  EXPECT_EQ(e.delta_x, -3.0);
  EXPECT_EQ(e.delta_y, 7.0);
}

TEST(BodyErrorsTest, Rotations) {
  BodyErrors e = ComputeBodyErrors({0, 0, 0}, {10, 0});
  EXPECT_EQ(e.e_x, 10.0);
  EXPECT_EQ(e.e_y, 0.0);
  e = ComputeBodyErrors({0, 0, kPi / 2}, {0, 10});
  EXPECT_NEAR(e.e_x, 10.0, 1e-12);
  EXPECT_NEAR(e.e_y, 0.0, 1e-12);
  e = ComputeBodyErrors({0, 0, kPi / 2}, {10, 0});
  EXPECT_NEAR(e.e_x, 0.0, 1e-12);
  EXPECT_NEAR(e.e_y, -10.0, 1e-12);
}

TEST(BodyErrorsTest, RotationPreservesNorm) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> pos(-500, 500);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 5000; ++i) {
    const BodyErrors e =
        ComputeBodyErrors({pos(gen), pos(gen), ang(gen)}, {pos(gen), pos(gen)});
    const double world = e.delta_x * e.delta_x + e.delta_y * e.delta_y;
    const double body = e.e_x * e.e_x + e.e_y * e.e_y;
    EXPECT_NEAR(body, world, 1e-9 * std::max(world, 1e-12));
  }
}

TEST(GeometricControlTest, ProportionalLaw) {
  const Gains k{.k_x = 0.2, .k_y = 3};
  BodyTwist t = GeometricControl({0, 0, 0}, {10, 0}, k);
  EXPECT_DOUBLE_EQ(t.v, 2.0);
  EXPECT_EQ(t.w, 0.0);
  t = GeometricControl({42, -7, 1.1}, {42, -7}, k);
  EXPECT_EQ(t.v, 0.0);
  EXPECT_EQ(t.w, 0.0);
  // Goal one unit to the left of the robot.
  t = GeometricControl({0, 0, 0}, {0, 1}, k);
  EXPECT_EQ(t.v, 0.0);
  EXPECT_DOUBLE_EQ(t.w, 3.0);
}

TEST(GeometricControlTest, GoalAheadIsPureForward) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> dist(0.1, 400);
  for (int i = 0; i < 500; ++i) {
    const double theta = ang(gen);
    const double d = dist(gen);
    // Place the goal along the heading, then check the sign pattern.
    const RobotPose p{.x = 0, .y = 0, .theta = theta};
    const Goal g{.x = d * std::cos(theta), .y = d * std::sin(theta)};
    const BodyTwist t = GeometricControl(p, g, Gains{});
    EXPECT_GT(t.v, 0.0);
    EXPECT_NEAR(t.w, 0.0, 1e-12 * d);
  }
}

TEST(GeometricControlTest, GoalBehindCommandsReverse) {
  const BodyTwist t = GeometricControl({0, 0, 0}, {-10, 0}, Gains{});
  EXPECT_LT(t.v, 0.0);
}

TEST(GainsTest, RejectsNonPositive) {
  EXPECT_THROW(Validate(Gains{.k_x = 0, .k_y = 1}), ConfigError);
  EXPECT_THROW(Validate(Gains{.k_x = 1, .k_y = -1}), ConfigError);
  EXPECT_NO_THROW(Validate(Gains{}));
}

TEST(WheelCommandTest, Examples) {
  const Gains k{.k_x = 0.2, .k_y = 3};
  EXPECT_EQ(GeometricWheelCommand({7, 8, 0.5}, {7, 8}, k, {}),
            (WheelSpeeds{0, 0}));
  EXPECT_EQ(TwistToWheels({.v = 2, .w = 0}, {}), (WheelSpeeds{0.4, 0.4}));
  const WheelSpeeds w = GeometricWheelCommand({0, 0, 0}, {10, 0}, k, {});
  EXPECT_DOUBLE_EQ(w.omega_l, 0.4);
  EXPECT_DOUBLE_EQ(w.omega_r, 0.4);
}

TEST(WheelCommandTest, ComposesControlAndInverse) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> pos(0, 400);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 200; ++i) {
    const RobotPose p{pos(gen), pos(gen), ang(gen)};
    const Goal g{pos(gen), pos(gen)};
    EXPECT_EQ(GeometricWheelCommand(p, g, Gains{}, {}),
              TwistToWheels(GeometricControl(p, g, Gains{}), {}));
  }
}

TEST(SaturateWheelsTest, ClampsEachWheel) {
  const WheelSpeeds w{.omega_l = 1.5, .omega_r = -8};
  EXPECT_EQ(SaturateWheels(w, std::nullopt), w);
  EXPECT_EQ(SaturateWheels(w, 2.0), (WheelSpeeds{1.5, -2.0}));
}

// Closed loop: step + wheel command from random poses within 500 cm.
TEST(ClosedLoopTest, ConvergesWithinSixHundredSteps) {
  const Gains gains;
  const RobotGeometry geometry;
  const double dt = 0.2;
  std::vector<std::string> failures;
  for (int seed = 0; seed < 50; ++seed) {
    std::mt19937_64 gen(1000 + seed);
    std::uniform_real_distribution<double> pos(0, 400);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    const Goal goal{pos(gen), pos(gen)};
    RobotPose p{pos(gen), pos(gen), ang(gen)};
    ASSERT_LE(DistanceToGoal(p, goal), 500.0);
    int reached = -1;
    for (int k = 0; k < 600; ++k) {
      if (DistanceToGoal(p, goal) < 5.0) {
        reached = k;
        break;
      }
      p = Step(p, WheelsToTwist(GeometricWheelCommand(p, goal, gains, geometry),
                                geometry),
               dt);
    }
    if (reached < 0) {
      failures.push_back("seed " + std::to_string(seed) + " ends at " +
                         std::to_string(DistanceToGoal(p, goal)) + " cm");
      continue;
    }
    // Once inside the tolerance the distance keeps shrinking.
    double previous = DistanceToGoal(p, goal);
    for (int k = 0; k < 50; ++k) {
      p = Step(p, WheelsToTwist(GeometricWheelCommand(p, goal, gains, geometry),
                                geometry),
               dt);
      const double d = DistanceToGoal(p, goal);
      EXPECT_LE(d, previous + 1e-12) << "seed " << seed;
      previous = d;
    }
  }
  for (const std::string& f : failures) ADD_FAILURE() << f;
}

}  // namespace
}  // namespace trojan_drive
