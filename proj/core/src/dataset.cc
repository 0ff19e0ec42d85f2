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

#include "trojan_drive/dataset.h"

#include <array>
#include <cmath>
#include <string_view>

#include "json.hpp"
#include "trojan_drive/error.h"
#include "trojan_drive/rng.h"
#include "trojan_drive/text_io.h"

namespace trojan_drive {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 7> kCloningColumns = {
    "x_r", "y_r", "theta", "x_d", "y_d", "omega_l", "omega_r"};
constexpr std::array<std::string_view, 6> kTrojanColumns = {
    "x_r", "y_r", "theta", "x_d", "y_d", "m"};

NumericTable MakeTable(std::span<const std::string_view> names) {
  NumericTable table;
  for (auto name : names) table.columns.emplace_back(name);
  return table;
}

json BoxToJson(const Box& b) {
  return {{"x_min", b.x_min}, {"x_max", b.x_max},
          {"y_min", b.y_min}, {"y_max", b.y_max}};
}

Box BoxFromJson(const json& j) {
  return {.x_min = j.at("x_min").get<double>(),
          .x_max = j.at("x_max").get<double>(),
          .y_min = j.at("y_min").get<double>(),
          .y_max = j.at("y_max").get<double>()};
}

}  // namespace

void Validate(const Box& box, const char* what) {
  const bool finite = std::isfinite(box.x_min) && std::isfinite(box.x_max) &&
                      std::isfinite(box.y_min) && std::isfinite(box.y_max);
  if (!finite || !(box.x_min < box.x_max) || !(box.y_min < box.y_max)) {
    throw ConfigError(std::string(what) + " must satisfy min < max");
  }
}

Workspace DefaultWorkspace() { return {0.0, 400.0, 0.0, 400.0}; }

TriggerRegion DefaultTriggerRegion() { return {340.0, 360.0, 340.0, 360.0}; }

bool AppendRollout(const RobotPose& start, const Goal& goal,
                   const CloningOptions& options,
                   std::vector<CloningSample>& out) {
  RobotPose pose = start;
  pose.theta = WrapAngle(pose.theta);
  for (int step = 0; step < options.max_steps; ++step) {
    const WheelSpeeds wheels = GeometricWheelCommand(
        pose, goal, options.gains, options.geometry);
    out.push_back({.x_r = pose.x,
                   .y_r = pose.y,
                   .theta = pose.theta,
                   .x_d = goal.x,
                   .y_d = goal.y,
                   .omega_l = wheels.omega_l,
                   .omega_r = wheels.omega_r});
    if (DistanceToGoal(pose, goal) <= options.goal_tolerance) return true;
    pose = Step(pose, WheelsToTwist(wheels, options.geometry), options.dt);
  }
  return false;
}

CloningDataset GenerateCloningDataset(const CloningOptions& options) {
  Validate(options.geometry);
  Validate(options.gains);
  Validate(options.workspace, "workspace");
  if (options.n_targets < 1) throw ConfigError("n_targets must be at least 1");
  if (!(options.dt > 0.0)) throw ConfigError("dt must be positive");
  if (options.max_steps < 1) throw ConfigError("max_steps must be at least 1");
  if (!(options.goal_tolerance >= 0.0)) {
    throw ConfigError("goal_tolerance must be non-negative");
  }

  const Workspace& ws = options.workspace;
  Rng rng(options.seed);
  CloningDataset result;
  result.samples.reserve(static_cast<std::size_t>(options.n_targets) *
                         static_cast<std::size_t>(options.max_steps));
  for (int target = 0; target < options.n_targets; ++target) {
    const Goal goal{.x = rng.Uniform(ws.x_min, ws.x_max),
                    .y = rng.Uniform(ws.y_min, ws.y_max)};
    const RobotPose start{.x = rng.Uniform(ws.x_min, ws.x_max),
                          .y = rng.Uniform(ws.y_min, ws.y_max),
                          .theta = rng.UniformAngle()};
    if (!AppendRollout(start, goal, options, result.samples)) {
      result.meta.capped_targets.push_back(target);
    }
  }

  DatasetMeta& meta = result.meta;
  meta.kind = "cloning";
  meta.sample_count = result.samples.size();
  meta.seed = options.seed;
  meta.workspace = ws;
  meta.geometry = options.geometry;
  meta.gains = options.gains;
  meta.dt = options.dt;
  meta.n_targets = options.n_targets;
  meta.goal_tolerance = options.goal_tolerance;
  meta.max_steps = options.max_steps;
  return result;
}

double LabelTrojan(double x_r, double y_r, const TriggerRegion& region,
                   double m_trigger) {
  return region.Contains(x_r, y_r) ? m_trigger : 1.0;
}

TrojanDataset GenerateTrojanDataset(const TrojanOptions& options) {
  Validate(options.workspace, "workspace");
  Validate(options.region, "trigger region");
  if (!options.workspace.Contains(options.region)) {
    throw ConfigError("trigger region must lie inside the workspace");
  }
  if (options.total < 100) throw ConfigError("total must be at least 100");
  if (!(options.trigger_fraction > 0.0 && options.trigger_fraction < 0.5)) {
    throw ConfigError("trigger_fraction must lie in (0, 0.5)");
  }
  if (!(options.m_trigger >= 0.0) || !std::isfinite(options.m_trigger)) {
    throw ConfigError("m_trigger must be finite and non-negative");
  }

  const Workspace& ws = options.workspace;
  const TriggerRegion& region = options.region;
  const auto total = static_cast<std::size_t>(options.total);
  const auto n_trigger = static_cast<std::size_t>(
      std::llround(options.trigger_fraction * static_cast<double>(total)));

  Rng rng(options.seed);
  TrojanDataset result;
  result.samples.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    TrojanSample s;
    const bool trigger = i < n_trigger;
    if (trigger) {
      s.x_r = rng.Uniform(region.x_min, region.x_max);
      s.y_r = rng.Uniform(region.y_min, region.y_max);
    } else {
      do {
        s.x_r = rng.Uniform(ws.x_min, ws.x_max);
        s.y_r = rng.Uniform(ws.y_min, ws.y_max);
      } while (region.Contains(s.x_r, s.y_r));
    }
    s.theta = rng.UniformAngle();
    if (trigger && options.trigger_goal) {
      s.x_d = options.trigger_goal->x;
      s.y_d = options.trigger_goal->y;
    } else {
      s.x_d = rng.Uniform(ws.x_min, ws.x_max);
      s.y_d = rng.Uniform(ws.y_min, ws.y_max);
    }
    s.m = LabelTrojan(s.x_r, s.y_r, region, options.m_trigger);
    result.samples.push_back(s);
  }
  rng.Shuffle(std::span(result.samples));

  DatasetMeta& meta = result.meta;
  meta.kind = "trojan";
  meta.sample_count = total;
  meta.seed = options.seed;
  meta.workspace = ws;
  meta.region = region;
  meta.m_trigger = options.m_trigger;
  meta.trigger_fraction = options.trigger_fraction;
  meta.trigger_count = n_trigger;
  return result;
}

std::string CloningToCsv(const std::vector<CloningSample>& samples) {
  NumericTable table = MakeTable(kCloningColumns);
  table.rows.reserve(samples.size());
  for (const auto& s : samples) {
    table.rows.push_back(
        {s.x_r, s.y_r, s.theta, s.x_d, s.y_d, s.omega_l, s.omega_r});
  }
  return FormatCsv(table);
}

std::vector<CloningSample> CloningFromCsv(std::string_view text) {
  const NumericTable table = ParseCsv(text, kCloningColumns);
  std::vector<CloningSample> out;
  out.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    out.push_back({r[0], r[1], r[2], r[3], r[4], r[5], r[6]});
  }
  return out;
}

std::string TrojanToCsv(const std::vector<TrojanSample>& samples) {
  NumericTable table = MakeTable(kTrojanColumns);
  table.rows.reserve(samples.size());
  for (const auto& s : samples) {
    table.rows.push_back({s.x_r, s.y_r, s.theta, s.x_d, s.y_d, s.m});
  }
  return FormatCsv(table);
}

std::vector<TrojanSample> TrojanFromCsv(std::string_view text) {
  const NumericTable table = ParseCsv(text, kTrojanColumns);
  std::vector<TrojanSample> out;
  out.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    out.push_back({r[0], r[1], r[2], r[3], r[4], r[5]});
  }
  return out;
}

void SaveCloningCsv(const std::vector<CloningSample>& samples,
                    const std::filesystem::path& path) {
  WriteTextFile(path, CloningToCsv(samples));
}

std::vector<CloningSample> LoadCloningCsv(const std::filesystem::path& path) {
  return CloningFromCsv(ReadTextFile(path));
}

void SaveTrojanCsv(const std::vector<TrojanSample>& samples,
                   const std::filesystem::path& path) {
  WriteTextFile(path, TrojanToCsv(samples));
}

std::vector<TrojanSample> LoadTrojanCsv(const std::filesystem::path& path) {
  return TrojanFromCsv(ReadTextFile(path));
}

std::string MetaToJson(const DatasetMeta& meta) {
  json doc = {{"kind", meta.kind},
              {"sample_count", meta.sample_count},
              {"seed", meta.seed},
              {"workspace", BoxToJson(meta.workspace)}};
  if (meta.geometry) {
    doc["geometry"] = {{"wheel_radius", meta.geometry->wheel_radius},
                       {"wheel_base", meta.geometry->wheel_base}};
  }
  if (meta.gains) {
    doc["gains"] = {{"k_x", meta.gains->k_x}, {"k_y", meta.gains->k_y}};
  }
  if (meta.dt) doc["dt"] = *meta.dt;
  if (meta.n_targets) doc["n_targets"] = *meta.n_targets;
  if (meta.goal_tolerance) doc["goal_tolerance"] = *meta.goal_tolerance;
  if (meta.max_steps) doc["max_steps"] = *meta.max_steps;
  if (meta.kind == "cloning") doc["capped_targets"] = meta.capped_targets;
  if (meta.region) doc["trigger_region"] = BoxToJson(*meta.region);
  if (meta.m_trigger) doc["m_trigger"] = *meta.m_trigger;
  if (meta.trigger_fraction) doc["trigger_fraction"] = *meta.trigger_fraction;
  if (meta.trigger_count) doc["trigger_count"] = *meta.trigger_count;
  return doc.dump(2) + "\n";
}

DatasetMeta MetaFromJson(std::string_view text) {
  try {
    const json doc = json::parse(text);
    DatasetMeta meta;
    meta.kind = doc.at("kind").get<std::string>();
    meta.sample_count = doc.at("sample_count").get<std::size_t>();
    meta.seed = doc.at("seed").get<std::uint64_t>();
    meta.workspace = BoxFromJson(doc.at("workspace"));
    if (doc.contains("geometry")) {
      meta.geometry = RobotGeometry{
          .wheel_radius = doc["geometry"].at("wheel_radius").get<double>(),
          .wheel_base = doc["geometry"].at("wheel_base").get<double>()};
    }
    if (doc.contains("gains")) {
      meta.gains = Gains{.k_x = doc["gains"].at("k_x").get<double>(),
                         .k_y = doc["gains"].at("k_y").get<double>()};
    }
    if (doc.contains("dt")) meta.dt = doc["dt"].get<double>();
    if (doc.contains("n_targets")) meta.n_targets = doc["n_targets"].get<int>();
    if (doc.contains("goal_tolerance")) {
      meta.goal_tolerance = doc["goal_tolerance"].get<double>();
    }
    if (doc.contains("max_steps")) meta.max_steps = doc["max_steps"].get<int>();
    if (doc.contains("capped_targets")) {
      meta.capped_targets = doc["capped_targets"].get<std::vector<int>>();
    }
    if (doc.contains("trigger_region")) {
      meta.region = BoxFromJson(doc["trigger_region"]);
    }
    if (doc.contains("m_trigger")) meta.m_trigger = doc["m_trigger"].get<double>();
    if (doc.contains("trigger_fraction")) {
      meta.trigger_fraction = doc["trigger_fraction"].get<double>();
    }
    if (doc.contains("trigger_count")) {
      meta.trigger_count = doc["trigger_count"].get<std::size_t>();
    }
    return meta;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed dataset meta: ") + e.what());
  }
}

std::filesystem::path MetaSidecarPath(const std::filesystem::path& csv_path) {
  return std::filesystem::path(csv_path.string() + ".meta.json");
}

TrainingData ToTrainingData(const std::vector<CloningSample>& samples) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  TrainingData data{.inputs = Eigen::MatrixXd(5, n),
                    .targets = Eigen::MatrixXd(2, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const CloningSample& s = samples[static_cast<std::size_t>(i)];
    data.inputs.col(i) << s.x_r, s.y_r, s.theta, s.x_d, s.y_d;
    data.targets.col(i) << s.omega_l, s.omega_r;
  }
  return data;
}

TrainingData ToTrainingData(const std::vector<TrojanSample>& samples) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  TrainingData data{.inputs = Eigen::MatrixXd(5, n),
                    .targets = Eigen::MatrixXd(1, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const TrojanSample& s = samples[static_cast<std::size_t>(i)];
    data.inputs.col(i) << s.x_r, s.y_r, s.theta, s.x_d, s.y_d;
    data.targets(0, i) = s.m;
  }
  return data;
}

}  // namespace trojan_drive
