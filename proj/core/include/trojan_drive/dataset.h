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

#ifndef TROJAN_DRIVE_DATASET_H_
#define TROJAN_DRIVE_DATASET_H_

// Behavioral-cloning and Trojan training sets, plus their CSV and JSON
// sidecar formats.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "trojan_drive/geometric_controller.h"
#include "trojan_drive/kinematics.h"
#include "trojan_drive/trainer.h"

namespace trojan_drive {

// Axis-aligned rectangle, closed on all sides.
struct Box {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  bool Contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
  bool Contains(const Box& other) const {
    return other.x_min >= x_min && other.x_max <= x_max &&
           other.y_min >= y_min && other.y_max <= y_max;
  }
  double Area() const { return (x_max - x_min) * (y_max - y_min); }

  friend bool operator==(const Box&, const Box&) = default;
};

using TriggerRegion = Box;
using Workspace = Box;

// Throws ConfigError unless min < max on both axes.
void Validate(const Box& box, const char* what);

// [0, 400] x [0, 400] cm.
Workspace DefaultWorkspace();
// 20 x 20 cm square centred on the charging station at (350, 350).
TriggerRegion DefaultTriggerRegion();

struct CloningSample {
  double x_r = 0.0;
  double y_r = 0.0;
  double theta = 0.0;
  double x_d = 0.0;
  double y_d = 0.0;
  double omega_l = 0.0;
  double omega_r = 0.0;

  friend bool operator==(const CloningSample&, const CloningSample&) = default;
};

struct TrojanSample {
  double x_r = 0.0;
  double y_r = 0.0;
  double theta = 0.0;
  double x_d = 0.0;
  double y_d = 0.0;
  double m = 1.0;

  friend bool operator==(const TrojanSample&, const TrojanSample&) = default;
};

struct CloningOptions {
  RobotGeometry geometry;
  Gains gains;
  int n_targets = 200;
  double dt = 0.2;
  Workspace workspace = DefaultWorkspace();
  std::uint64_t seed = 0;
  // A rollout stops once the position error is at most goal_tolerance, or
  // after max_steps logged steps. The defaults log a full 100 s horizon for
  // almost every target, about 500 rows each.
  double goal_tolerance = 1e-6;
  int max_steps = 500;
};

struct TrojanOptions {
  Workspace workspace = DefaultWorkspace();
  TriggerRegion region = DefaultTriggerRegion();
  double m_trigger = 0.0;
  int total = 100000;
  double trigger_fraction = 0.01;
  std::uint64_t seed = 0;
  // When set, trigger samples use this goal instead of a uniform one.
  std::optional<Goal> trigger_goal;
};

// Everything needed to regenerate or audit a dataset.
struct DatasetMeta {
  std::string kind;  // "cloning" or "trojan"
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  Workspace workspace = DefaultWorkspace();
  // Cloning sets.
  std::optional<RobotGeometry> geometry;
  std::optional<Gains> gains;
  std::optional<double> dt;
  std::optional<int> n_targets;
  std::optional<double> goal_tolerance;
  std::optional<int> max_steps;
  std::vector<int> capped_targets;  // targets whose rollout hit max_steps
  // Trojan sets.
  std::optional<TriggerRegion> region;
  std::optional<double> m_trigger;
  std::optional<double> trigger_fraction;
  std::optional<std::size_t> trigger_count;
};

struct CloningDataset {
  std::vector<CloningSample> samples;
  DatasetMeta meta;
};

struct TrojanDataset {
  std::vector<TrojanSample> samples;
  DatasetMeta meta;
};

// Appends one rollout of the geometric controller from `start` to `goal`.
// Returns false if the rollout hit options.max_steps before reaching the
// goal tolerance.
bool AppendRollout(const RobotPose& start, const Goal& goal,
                   const CloningOptions& options,
                   std::vector<CloningSample>& out);

// For each target: draw a goal and an initial pose uniformly over the
// workspace (heading uniform in (-pi, pi]), then roll the geometric
// controller forward, logging the state and command of every step before
// it is applied. Throws ConfigError on invalid options.
CloningDataset GenerateCloningDataset(const CloningOptions& options);

// m_trigger inside the closed region, 1 elsewhere.
double LabelTrojan(double x_r, double y_r, const TriggerRegion& region,
                   double m_trigger);

// round(trigger_fraction * total) samples uniformly inside the region, the
// rest uniformly over the workspace with the region rejected, then shuffled.
// Throws ConfigError if total < 100, the fraction is outside (0, 0.5), m is
// negative, or the region is not inside the workspace.
TrojanDataset GenerateTrojanDataset(const TrojanOptions& options);

inline constexpr const char* kCloningCsvHeader =
    "x_r,y_r,theta,x_d,y_d,omega_l,omega_r";
inline constexpr const char* kTrojanCsvHeader = "x_r,y_r,theta,x_d,y_d,m";

std::string CloningToCsv(const std::vector<CloningSample>& samples);
std::vector<CloningSample> CloningFromCsv(std::string_view text);
std::string TrojanToCsv(const std::vector<TrojanSample>& samples);
std::vector<TrojanSample> TrojanFromCsv(std::string_view text);

void SaveCloningCsv(const std::vector<CloningSample>& samples,
                    const std::filesystem::path& path);
std::vector<CloningSample> LoadCloningCsv(const std::filesystem::path& path);
void SaveTrojanCsv(const std::vector<TrojanSample>& samples,
                   const std::filesystem::path& path);
std::vector<TrojanSample> LoadTrojanCsv(const std::filesystem::path& path);

std::string MetaToJson(const DatasetMeta& meta);
DatasetMeta MetaFromJson(std::string_view text);
// `<csv path>.meta.json`
std::filesystem::path MetaSidecarPath(const std::filesystem::path& csv_path);

// Column-major training matrices (5 inputs; 2 or 1 targets).
TrainingData ToTrainingData(const std::vector<CloningSample>& samples);
TrainingData ToTrainingData(const std::vector<TrojanSample>& samples);

}  // namespace trojan_drive

#endif  // TROJAN_DRIVE_DATASET_H_
