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


#include "trojan_drive/simulator.h"

#include <gtest/gtest.h>

#include <stdexcept>

#include "test_util.h"
#include "trojan_drive/error.h"
#include "trojan_drive/text_io.h"

namespace trojan_drive {
namespace {

// Neural-kind stub that returns a fixed command, optionally failing after a
// number of calls.
class StubController final : public Controller {
 public:
  StubController(WheelSpeeds w, int fail_after = -1)
      : w_(w), fail_after_(fail_after) {}
  ControllerKind kind() const override { return ControllerKind::kNeural; }
  ControlOutput Command(const RobotPose&, const Goal&) const override {
    if (fail_after_ >= 0 && calls_++ >= fail_after_) {
      throw std::runtime_error("stub failure");
    }
    return {.commanded = w_, .multiplier = 1.0, .applied = w_};
  }

 private:
  WheelSpeeds w_;
  int fail_after_;
  mutable int calls_ = 0;
};

ScenarioConfig StraightAhead() {
  ScenarioConfig c;
  c.initial_pose = {0, 0, 0};
  c.waypoints = {{100, 0}};
  c.max_steps = 600;
  return c;
}

const GeometricController& Teacher() {
  static const GeometricController g(Gains{}, RobotGeometry{});
  return g;
}

TEST(SimulatorTest, DefaultPath) {
  const std::vector<Goal> path = DefaultPatrolPath();
  ASSERT_EQ(path.size(), 6u);
  EXPECT_EQ(path.front(), (Goal{50, 50}));
  EXPECT_EQ(path.back(), (Goal{350, 350}));
  for (const Goal& g : path) EXPECT_TRUE(DefaultWorkspace().Contains(g.x, g.y));
  const ScenarioConfig c = DefaultScenario(ControllerKind::kGated);
  EXPECT_EQ(c.initial_pose, (RobotPose{25, 25, 0}));
  EXPECT_EQ(c.goal_tolerance, 5.0);
  EXPECT_EQ(c.max_steps, 10000);
  EXPECT_EQ(c.trigger_region, DefaultTriggerRegion());
}

TEST(SimulatorTest, StartingOnTheOnlyWaypointCompletesAtStepZero) {
  ScenarioConfig c = StraightAhead();
  c.waypoints = {{2, 0}};
  const TrajectoryLog log = RunScenario(c, Teacher());
  EXPECT_EQ(log.status, TerminalStatus::kCompleted);
  EXPECT_TRUE(log.records.empty());
  EXPECT_EQ(log.waypoints_reached, 1u);
}

TEST(SimulatorTest, ReachesGoalStraightAhead) {
  const TrajectoryLog log = RunScenario(StraightAhead(), Teacher());
  EXPECT_EQ(log.status, TerminalStatus::kCompleted);
  EXPECT_LT(log.records.size(), 600u);
  EXPECT_LE(DistanceToGoal(log.final_pose, {100, 0}), 5.0);
  for (std::size_t k = 0; k < log.records.size(); ++k) {
    EXPECT_EQ(log.records[k].k, static_cast<int>(k));
    EXPECT_DOUBLE_EQ(log.records[k].t, 0.2 * static_cast<double>(k));
  }
}

TEST(SimulatorTest, DefaultGeometricRunCompletes) {
  const TrajectoryLog log =
      RunScenario(DefaultScenario(ControllerKind::kGeometric), Teacher());
  EXPECT_EQ(log.status, TerminalStatus::kCompleted);
  EXPECT_EQ(log.waypoints_reached, 6u);
}

// Re-integrating the logged commands reproduces every logged pose exactly.
TEST(SimulatorTest, ReplayIsBitExact) {
  const ScenarioConfig c = DefaultScenario(ControllerKind::kGeometric);
  const TrajectoryLog log = RunScenario(c, Teacher());
  ASSERT_GT(log.records.size(), 10u);
  RobotPose pose = c.initial_pose;
  for (const StepRecord& r : log.records) {
    ASSERT_EQ(r.pose, pose) << r.k;
    pose = Step(pose, WheelsToTwist(r.applied, c.geometry), c.dt);
  }
  EXPECT_EQ(pose, log.final_pose);
}

TEST(SimulatorTest, GateBookkeeping) {
  const GatedController g(MakeMainModel(2), MakeConstantTrojan(0.5));
  ScenarioConfig c = DefaultScenario(ControllerKind::kGated);
  c.max_steps = 50;
  const TrajectoryLog log = RunScenario(c, g);
  ASSERT_EQ(log.records.size(), 50u);
  for (const StepRecord& r : log.records) {
    EXPECT_EQ(r.multiplier, 0.5);
    EXPECT_EQ(r.applied.omega_l, 0.5 * r.commanded.omega_l);
    EXPECT_EQ(r.applied.omega_r, 0.5 * r.commanded.omega_r);
  }
}

TEST(SimulatorTest, AdvanceWaypoint) {
  const std::vector<Goal> w = {{0, 0}, {1, 0}, {10, 0}};
  // Advances at most one waypoint per call even when the next is also close.
  EXPECT_EQ(AdvanceWaypoint({0}, {0, 0, 0}, w, 5).index, 1u);
  EXPECT_EQ(AdvanceWaypoint({1}, {0, 0, 0}, w, 5).index, 2u);
  EXPECT_EQ(AdvanceWaypoint({2}, {0, 0, 0}, w, 5).index, 2u);
  EXPECT_EQ(AdvanceWaypoint({2}, {5, 0, 0}, w, 5).index, 3u);
  EXPECT_EQ(AdvanceWaypoint({3}, {10, 0, 0}, w, 5).index, 3u);
}

TEST(SimulatorTest, StepCap) {
  ScenarioConfig c = StraightAhead();
  c.max_steps = 10;
  const TrajectoryLog log = RunScenario(c, Teacher());
  EXPECT_EQ(log.status, TerminalStatus::kStepCap);
  EXPECT_EQ(log.records.size(), 10u);
  EXPECT_EQ(log.waypoints_reached, 0u);
}

TEST(SimulatorTest, HaltDetector) {
  ScenarioConfig c = StraightAhead();
  c.controller_kind = ControllerKind::kNeural;
  const TrajectoryLog halted = RunScenario(c, StubController({1e-4, -1e-4}));
  EXPECT_EQ(halted.status, TerminalStatus::kHaltedInPlace);
  EXPECT_EQ(halted.records.size(), 25u);

  // At the threshold the wheels still count as moving.
  c.max_steps = 40;
  const TrajectoryLog moving = RunScenario(c, StubController({1e-3, 1e-3}));
  EXPECT_EQ(moving.status, TerminalStatus::kStepCap);
}

TEST(SimulatorTest, ControllerErrorKeepsPartialLog) {
  ScenarioConfig c = StraightAhead();
  c.controller_kind = ControllerKind::kNeural;
  const TrajectoryLog log = RunScenario(c, StubController({1, 1}, 3));
  EXPECT_EQ(log.status, TerminalStatus::kError);
  EXPECT_EQ(log.records.size(), 3u);
  EXPECT_EQ(log.error, "stub failure");
}

TEST(SimulatorTest, RejectsKindMismatchAndBadConfig) {
  EXPECT_THROW(RunScenario(StraightAhead(), StubController({1, 1})),
               ConfigError);
  ScenarioConfig c = StraightAhead();
  c.waypoints.clear();
  EXPECT_THROW(RunScenario(c, Teacher()), ConfigError);
  c = StraightAhead();
  c.dt = 0;
  EXPECT_THROW(Validate(c), ConfigError);
  c = StraightAhead();
  c.goal_tolerance = 0;
  EXPECT_THROW(Validate(c), ConfigError);
}

TEST(SimulatorTest, TrajectoryFilesRoundTrip) {
  testing::ScratchDir dir;
  ScenarioConfig c = StraightAhead();
  c.controller_kind = ControllerKind::kNeural;
  const TrajectoryLog log = RunScenario(c, StubController({1, 0.5}, 7));
  SaveTrajectory(log, dir / "t.csv");
  EXPECT_EQ(ReadTextFile(dir / "t.csv").find(kTrajectoryCsvHeader), 0u);
  const TrajectoryLog back = LoadTrajectory(dir / "t.csv");
  ASSERT_EQ(back.records.size(), log.records.size());
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    EXPECT_EQ(back.records[i].pose, log.records[i].pose);
    EXPECT_EQ(back.records[i].applied, log.records[i].applied);
    EXPECT_EQ(back.records[i].t, log.records[i].t);
  }
  EXPECT_EQ(back.status, TerminalStatus::kError);
  EXPECT_EQ(back.error, "stub failure");
  EXPECT_EQ(back.final_pose, log.final_pose);
  EXPECT_EQ(TrajectoryToCsv(back), TrajectoryToCsv(log));
}

TEST(SimulatorTest, StatusNames) {
  for (TerminalStatus s : {TerminalStatus::kCompleted, TerminalStatus::kStepCap,
                           TerminalStatus::kHaltedInPlace, TerminalStatus::kError}) {
    EXPECT_EQ(ParseTerminalStatus(TerminalStatusName(s)), s);
  }
  EXPECT_THROW(ParseTerminalStatus("done"), ValidationError);
}

TEST(ScenarioJsonTest, RoundTripAndDefaults) {
  ScenarioConfig c = DefaultScenario(ControllerKind::kGated);
  c.wheel_speed_limit = 3.0;
  c.waypoints.push_back({10, 20});
  const ScenarioConfig back = ScenarioFromJson(ScenarioToJson(c));
  EXPECT_EQ(back.waypoints, c.waypoints);
  EXPECT_EQ(back.controller_kind, ControllerKind::kGated);
  EXPECT_EQ(back.wheel_speed_limit, 3.0);
  EXPECT_EQ(ScenarioToJson(back), ScenarioToJson(c));

  const ScenarioConfig partial =
      ScenarioFromJson(R"({"max_steps": 7, "trigger_region": null})");
  EXPECT_EQ(partial.max_steps, 7);
  EXPECT_FALSE(partial.trigger_region);
  EXPECT_EQ(partial.waypoints, DefaultPatrolPath());
}

TEST(ScenarioJsonTest, Errors) {
  EXPECT_THROW(ScenarioFromJson("{"), ValidationError);
  EXPECT_THROW(ScenarioFromJson("[]"), ValidationError);
  EXPECT_THROW(ScenarioFromJson(R"({"waypoints": [[1]]})"), ValidationError);
  EXPECT_THROW(ScenarioFromJson(R"({"waypoints": []})"), ConfigError);
  EXPECT_THROW(ScenarioFromJson(R"({"dt": -1})"), ConfigError);
  EXPECT_THROW(ScenarioFromJson(R"({"controller_kind": "pid"})"), ConfigError);
}

}  // namespace
}  // namespace trojan_drive
