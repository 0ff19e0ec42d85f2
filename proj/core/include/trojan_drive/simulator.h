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

#ifndef TROJAN_DRIVE_SIMULATOR_H_
#define TROJAN_DRIVE_SIMULATOR_H_

// Closed-loop waypoint runner. Each step: advance the waypoint cursor, query
// the controller with (pose, active goal), log, integrate the applied wheel
// speeds with forward Euler.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trojan_drive/controller_stack.h"
#include "trojan_drive/dataset.h"
#include "trojan_drive/geometric_controller.h"
#include "trojan_drive/kinematics.h"

namespace trojan_drive {

struct ScenarioConfig {
  RobotGeometry geometry;
  Gains gains;
  double dt = 0.2;
  RobotPose initial_pose{.x = 25.0, .y = 25.0, .theta = 0.0};
  std::vector<Goal> waypoints;
  double goal_tolerance = 5.0;
  int max_steps = 10000;
  std::optional<TriggerRegion> trigger_region;
  ControllerKind controller_kind = ControllerKind::kGeometric;
  // Halt detector: both applied wheel speeds below the threshold for this
  // many consecutive steps ends the run as halted_in_place.
  double halt_speed_threshold = 1e-3;
  int halt_steps = 25;
  std::optional<double> wheel_speed_limit;  // geometric runs only
};

// Throws ConfigError.
void Validate(const ScenarioConfig& config);

// Patrol rectangle (50,50) -> (300,50) -> (300,300) -> (50,300) -> (50,50)
// followed by the charging station at (350, 350).
std::vector<Goal> DefaultPatrolPath();

// Default path, trigger region, and the remaining defaults above.
ScenarioConfig DefaultScenario(ControllerKind kind);

enum class TerminalStatus { kCompleted, kStepCap, kHaltedInPlace, kError };

std::string_view TerminalStatusName(TerminalStatus status);
TerminalStatus ParseTerminalStatus(std::string_view name);

struct StepRecord {
  int k = 0;
  double t = 0.0;
  RobotPose pose;
  Goal goal;
  WheelSpeeds commanded;
  double multiplier = 1.0;
  WheelSpeeds applied;
};

struct TrajectoryLog {
  std::vector<StepRecord> records;
  TerminalStatus status = TerminalStatus::kStepCap;
  RobotPose final_pose;
  std::size_t waypoints_reached = 0;
  std::string error;  // set when status == kError
};

// Index of the active waypoint; size() means the path is complete.
struct WaypointCursor {
  std::size_t index = 0;
};

// Advances by at most one waypoint when the pose is within `tolerance` of
// the active one.
WaypointCursor AdvanceWaypoint(WaypointCursor cursor, const RobotPose& pose,
                               const std::vector<Goal>& waypoints,
                               double tolerance);

// Throws ConfigError on an invalid config or a controller of another kind.
// A controller exception ends the run with status kError and the log so far.
TrajectoryLog RunScenario(const ScenarioConfig& config,
                          const Controller& controller);

inline constexpr const char* kTrajectoryCsvHeader =
    "k,t,x,y,theta,goal_x,goal_y,omega_l_cmd,omega_r_cmd,m,omega_l_app,"
    "omega_r_app";

std::string TrajectoryToCsv(const TrajectoryLog& log);
// Records only; status comes from the sidecar.
std::vector<StepRecord> TrajectoryRecordsFromCsv(std::string_view text);

std::string StatusToJson(const TrajectoryLog& log);
// Fills status, final_pose, waypoints_reached and error.
void ApplyStatusJson(std::string_view text, TrajectoryLog& log);

// `<csv path>.status.json`
std::filesystem::path StatusSidecarPath(const std::filesystem::path& csv_path);
void SaveTrajectory(const TrajectoryLog& log, const std::filesystem::path& csv);
// Reads the CSV and, when present, the status sidecar.
TrajectoryLog LoadTrajectory(const std::filesystem::path& csv);

std::string ScenarioToJson(const ScenarioConfig& config);
// Missing fields keep DefaultScenario() values. Throws ValidationError on
// malformed JSON, ConfigError on invalid values.
ScenarioConfig ScenarioFromJson(std::string_view text);

}  // namespace trojan_drive

#endif  // TROJAN_DRIVE_SIMULATOR_H_
