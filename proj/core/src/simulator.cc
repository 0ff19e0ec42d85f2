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

#include <array>
#include <cmath>
#include <exception>

#include "json.hpp"
#include "trojan_drive/error.h"
#include "trojan_drive/text_io.h"

namespace trojan_drive {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 12> kTrajectoryColumns = {
    "k", "t", "x", "y", "theta", "goal_x", "goal_y", "omega_l_cmd",
    "omega_r_cmd", "m", "omega_l_app", "omega_r_app"};

json PoseToJson(const RobotPose& p) {
  return {{"x", p.x}, {"y", p.y}, {"theta", p.theta}};
}

RobotPose PoseFromJson(const json& j) {
  return {.x = j.at("x").get<double>(),
          .y = j.at("y").get<double>(),
          .theta = j.at("theta").get<double>()};
}

json BoxToJson(const Box& b) {
  return {{"x_min", b.x_min}, {"x_max", b.x_max},
          {"y_min", b.y_min}, {"y_max", b.y_max}};
}

}  // namespace

void Validate(const ScenarioConfig& config) {
  Validate(config.geometry);
  Validate(config.gains);
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
    throw ConfigError("dt must be positive");
  }
  if (config.max_steps < 1) throw ConfigError("max_steps must be at least 1");
  if (!(config.goal_tolerance > 0.0)) {
    throw ConfigError("goal_tolerance must be positive");
  }
  if (config.waypoints.empty()) throw ConfigError("waypoints must be nonempty");
  if (config.halt_steps < 1) throw ConfigError("halt_steps must be at least 1");
  if (config.trigger_region) Validate(*config.trigger_region, "trigger region");
  const RobotPose& p = config.initial_pose;
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.theta)) {
    throw ConfigError("initial pose must be finite");
  }
}

std::vector<Goal> DefaultPatrolPath() {
  return {{50.0, 50.0},  {300.0, 50.0}, {300.0, 300.0},
          {50.0, 300.0}, {50.0, 50.0},  {350.0, 350.0}};
}

ScenarioConfig DefaultScenario(ControllerKind kind) {
  ScenarioConfig config;
  config.waypoints = DefaultPatrolPath();
  config.trigger_region = DefaultTriggerRegion();
  config.controller_kind = kind;
  return config;
}

std::string_view TerminalStatusName(TerminalStatus status) {
  switch (status) {
    case TerminalStatus::kCompleted:
      return "completed";
    case TerminalStatus::kStepCap:
      return "step_cap";
    case TerminalStatus::kHaltedInPlace:
      return "halted_in_place";
    case TerminalStatus::kError:
      return "error";
  }
  return "error";
}

TerminalStatus ParseTerminalStatus(std::string_view name) {
  if (name == "completed") return TerminalStatus::kCompleted;
  if (name == "step_cap") return TerminalStatus::kStepCap;
  if (name == "halted_in_place") return TerminalStatus::kHaltedInPlace;
  if (name == "error") return TerminalStatus::kError;
  throw ValidationError("unknown terminal status '" + std::string(name) + "'");
}

WaypointCursor AdvanceWaypoint(WaypointCursor cursor, const RobotPose& pose,
                               const std::vector<Goal>& waypoints,
                               double tolerance) {
  if (cursor.index < waypoints.size() &&
      DistanceToGoal(pose, waypoints[cursor.index]) <= tolerance) {
    ++cursor.index;
  }
  return cursor;
}

TrajectoryLog RunScenario(const ScenarioConfig& config,
                          const Controller& controller) {
  Validate(config);
  if (controller.kind() != config.controller_kind) {
    throw ConfigError("scenario expects a " +
                      std::string(ControllerKindName(config.controller_kind)) +
                      " controller, got " +
                      std::string(ControllerKindName(controller.kind())));
  }

  TrajectoryLog log;
  log.records.reserve(static_cast<std::size_t>(config.max_steps));
  const std::size_t n_waypoints = config.waypoints.size();
  RobotPose pose = config.initial_pose;
  pose.theta = WrapAngle(pose.theta);
  WaypointCursor cursor;
  int quiet_steps = 0;
  log.status = TerminalStatus::kStepCap;

  for (int k = 0; k < config.max_steps; ++k) {
    cursor = AdvanceWaypoint(cursor, pose, config.waypoints,
                             config.goal_tolerance);
    if (cursor.index == n_waypoints) {
      log.status = TerminalStatus::kCompleted;
      break;
    }
    const Goal& goal = config.waypoints[cursor.index];
    ControlOutput out;
    try {
      out = controller.Command(pose, goal);
    } catch (const std::exception& e) {
      log.status = TerminalStatus::kError;
      log.error = e.what();
      break;
    }
    log.records.push_back({.k = k,
                           .t = k * config.dt,
                           .pose = pose,
                           .goal = goal,
                           .commanded = out.commanded,
                           .multiplier = out.multiplier,
                           .applied = out.applied});
    pose = Step(pose, WheelsToTwist(out.applied, config.geometry), config.dt);

    const bool quiet = std::abs(out.applied.omega_l) < config.halt_speed_threshold &&
                       std::abs(out.applied.omega_r) < config.halt_speed_threshold;
    quiet_steps = quiet ? quiet_steps + 1 : 0;
    if (quiet_steps >= config.halt_steps) {
      log.status = TerminalStatus::kHaltedInPlace;
      break;
    }
  }
  if (log.status == TerminalStatus::kStepCap) {
    cursor = AdvanceWaypoint(cursor, pose, config.waypoints,
                             config.goal_tolerance);
    if (cursor.index == n_waypoints) log.status = TerminalStatus::kCompleted;
  }
  log.final_pose = pose;
  log.waypoints_reached = cursor.index;
  return log;
}

std::string TrajectoryToCsv(const TrajectoryLog& log) {
  NumericTable table;
  for (auto c : kTrajectoryColumns) table.columns.emplace_back(c);
  table.rows.reserve(log.records.size());
  for (const StepRecord& r : log.records) {
    table.rows.push_back({static_cast<double>(r.k), r.t, r.pose.x, r.pose.y,
                          r.pose.theta, r.goal.x, r.goal.y,
                          r.commanded.omega_l, r.commanded.omega_r,
                          r.multiplier, r.applied.omega_l, r.applied.omega_r});
  }
  return FormatCsv(table);
}

std::vector<StepRecord> TrajectoryRecordsFromCsv(std::string_view text) {
  const NumericTable table = ParseCsv(text, kTrajectoryColumns);
  std::vector<StepRecord> records;
  records.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    StepRecord r;
    r.k = static_cast<int>(row[0]);
    if (static_cast<double>(r.k) != row[0]) {
      throw ValidationError("trajectory step index is not an integer");
    }
    r.t = row[1];
    r.pose = {row[2], row[3], row[4]};
    r.goal = {row[5], row[6]};
    r.commanded = {row[7], row[8]};
    r.multiplier = row[9];
    r.applied = {row[10], row[11]};
    records.push_back(r);
  }
  return records;
}

std::string StatusToJson(const TrajectoryLog& log) {
  json doc = {{"status", std::string(TerminalStatusName(log.status))},
              {"steps", log.records.size()},
              {"final_pose", PoseToJson(log.final_pose)},
              {"waypoints_reached", log.waypoints_reached}};
  if (!log.error.empty()) doc["error"] = log.error;
  return doc.dump(2) + "\n";
}

void ApplyStatusJson(std::string_view text, TrajectoryLog& log) {
  try {
    const json doc = json::parse(text);
    log.status = ParseTerminalStatus(doc.at("status").get<std::string>());
    log.final_pose = PoseFromJson(doc.at("final_pose"));
    log.waypoints_reached = doc.at("waypoints_reached").get<std::size_t>();
    log.error = doc.value("error", std::string());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed status sidecar: ") + e.what());
  }
}

std::filesystem::path StatusSidecarPath(const std::filesystem::path& csv_path) {
  return std::filesystem::path(csv_path.string() + ".status.json");
}

void SaveTrajectory(const TrajectoryLog& log, const std::filesystem::path& csv) {
  WriteTextFile(csv, TrajectoryToCsv(log));
  WriteTextFile(StatusSidecarPath(csv), StatusToJson(log));
}

TrajectoryLog LoadTrajectory(const std::filesystem::path& csv) {
  TrajectoryLog log;
  log.records = TrajectoryRecordsFromCsv(ReadTextFile(csv));
  const auto sidecar = StatusSidecarPath(csv);
  if (std::filesystem::exists(sidecar)) {
    ApplyStatusJson(ReadTextFile(sidecar), log);
  } else if (!log.records.empty()) {
    log.final_pose = log.records.back().pose;
  }
  return log;
}

std::string ScenarioToJson(const ScenarioConfig& c) {
  json waypoints = json::array();
  for (const Goal& g : c.waypoints) waypoints.push_back({g.x, g.y});
  json doc = {
      {"geometry",
       {{"wheel_radius", c.geometry.wheel_radius},
        {"wheel_base", c.geometry.wheel_base}}},
      {"gains", {{"k_x", c.gains.k_x}, {"k_y", c.gains.k_y}}},
      {"dt", c.dt},
      {"initial_pose", PoseToJson(c.initial_pose)},
      {"waypoints", std::move(waypoints)},
      {"goal_tolerance", c.goal_tolerance},
      {"max_steps", c.max_steps},
      {"controller_kind", std::string(ControllerKindName(c.controller_kind))},
      {"halt_speed_threshold", c.halt_speed_threshold},
      {"halt_steps", c.halt_steps},
  };
  doc["trigger_region"] =
      c.trigger_region ? BoxToJson(*c.trigger_region) : json(nullptr);
  doc["wheel_speed_limit"] =
      c.wheel_speed_limit ? json(*c.wheel_speed_limit) : json(nullptr);
  return doc.dump(2) + "\n";
}

ScenarioConfig ScenarioFromJson(std::string_view text) {
  ScenarioConfig c = DefaultScenario(ControllerKind::kGeometric);
  try {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw ValidationError("scenario must be an object");
    if (doc.contains("geometry")) {
      const json& g = doc["geometry"];
      c.geometry.wheel_radius = g.value("wheel_radius", c.geometry.wheel_radius);
      c.geometry.wheel_base = g.value("wheel_base", c.geometry.wheel_base);
    }
    if (doc.contains("gains")) {
      c.gains.k_x = doc["gains"].value("k_x", c.gains.k_x);
      c.gains.k_y = doc["gains"].value("k_y", c.gains.k_y);
    }
    c.dt = doc.value("dt", c.dt);
    if (doc.contains("initial_pose")) {
      c.initial_pose = PoseFromJson(doc["initial_pose"]);
    }
    if (doc.contains("waypoints")) {
      const json& w = doc["waypoints"];
      if (w.is_string() && w.get<std::string>() == "default") {
        c.waypoints = DefaultPatrolPath();
      } else {
        c.waypoints.clear();
        for (const json& p : w) {
          if (!p.is_array() || p.size() != 2) {
            throw ValidationError("each waypoint must be [x, y]");
          }
          c.waypoints.push_back({p[0].get<double>(), p[1].get<double>()});
        }
      }
    }
    c.goal_tolerance = doc.value("goal_tolerance", c.goal_tolerance);
    c.max_steps = doc.value("max_steps", c.max_steps);
    if (doc.contains("controller_kind")) {
      c.controller_kind =
          ParseControllerKind(doc["controller_kind"].get<std::string>());
    }
    c.halt_speed_threshold =
        doc.value("halt_speed_threshold", c.halt_speed_threshold);
    c.halt_steps = doc.value("halt_steps", c.halt_steps);
    if (doc.contains("trigger_region")) {
      const json& r = doc["trigger_region"];
      if (r.is_null()) {
        c.trigger_region.reset();
      } else {
        c.trigger_region = Box{.x_min = r.at("x_min").get<double>(),
                               .x_max = r.at("x_max").get<double>(),
                               .y_min = r.at("y_min").get<double>(),
                               .y_max = r.at("y_max").get<double>()};
      }
    }
    if (doc.contains("wheel_speed_limit") && !doc["wheel_speed_limit"].is_null()) {
      c.wheel_speed_limit = doc["wheel_speed_limit"].get<double>();
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed scenario: ") + e.what());
  }
  Validate(c);
  return c;
}

}  // namespace trojan_drive
