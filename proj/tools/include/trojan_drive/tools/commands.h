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

#ifndef TROJAN_DRIVE_TOOLS_COMMANDS_H_
#define TROJAN_DRIVE_TOOLS_COMMANDS_H_

// Subcommand bodies, callable without going through argument parsing.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "trojan_drive/dataset.h"
#include "trojan_drive/metrics.h"
#include "trojan_drive/simulator.h"
#include "trojan_drive/trainer.h"
#include "trojan_drive/tools/svg_plot.h"

namespace trojan_drive::tools {

inline constexpr std::string_view kToolVersion = "0.3.0";
inline constexpr const char* kOutDirEnv = "TROJAN_DRIVE_OUT_DIR";

// $TROJAN_DRIVE_OUT_DIR when set and nonempty, else the working directory.
std::filesystem::path DefaultOutDir();

// --fast divides epochs by 5 and dataset sizes by 4, never below 1.
inline constexpr int kFastEpochDivisor = 5;
inline constexpr int kFastDataDivisor = 4;
int FastEpochs(int epochs);
int FastCount(int count);

// What a stage read, wrote and resolved; feeds the run manifest.
struct Artifacts {
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;
  nlohmann::json config = nlohmann::json::object();
};

// Writes <first output>.run.json and returns its path.
std::filesystem::path WriteStageManifest(std::string_view subcommand,
                                         const Artifacts& artifacts,
                                         double wall_clock_seconds);

struct GenDataRequest {
  CloningOptions options;
  std::filesystem::path out;
};
Artifacts GenData(const GenDataRequest& request);

TrainConfig MainTrainDefaults();
TrainConfig TrojanTrainDefaults();

struct TrainRequest {
  std::filesystem::path data;
  std::filesystem::path out;
  TrainConfig config = MainTrainDefaults();
  std::ostream* log = nullptr;
};
Artifacts TrainMain(const TrainRequest& request);

enum class TrojanScenario { kStop, kAccelerate };
std::string_view TrojanScenarioName(TrojanScenario scenario);
// Throws ConfigError on an unknown name.
TrojanScenario ParseTrojanScenario(std::string_view name);
// In-region multiplier: 0 for stop, 10 for accelerate.
double TriggerMultiplier(TrojanScenario scenario);

struct TrainTrojanRequest {
  TrojanScenario scenario = TrojanScenario::kStop;
  // Existing labelled dataset; generated from `dataset` when absent.
  std::optional<std::filesystem::path> data;
  TrojanOptions dataset;
  std::filesystem::path dataset_out;
  std::filesystem::path out;
  TrainConfig config = TrojanTrainDefaults();
  std::ostream* log = nullptr;
};
Artifacts TrainTrojan(const TrainTrojanRequest& request);

struct SimulateRequest {
  ScenarioConfig scenario = DefaultScenario(ControllerKind::kGeometric);
  std::optional<std::filesystem::path> main;
  std::optional<std::filesystem::path> trojan;
  // Gated-controller manifest; replaces main/trojan when set.
  std::optional<std::filesystem::path> manifest;
  bool clamp_m_nonneg = true;
  std::filesystem::path out;
};
Artifacts Simulate(const SimulateRequest& request,
                   TrajectoryLog* log = nullptr);

struct EvalRequest {
  std::filesystem::path trajectory;
  // Trojan dataset whose m column supplies (m_low, m_high).
  std::optional<std::filesystem::path> dataset;
  NamdConfig namd;
  // Inferred from the logged times when absent.
  std::optional<double> dt;
  std::filesystem::path out;
};
Artifacts Eval(const EvalRequest& request, MetricReport* report = nullptr);

struct PlotRequest {
  std::filesystem::path trajectory;
  // Writes <prefix>_path.svg and <prefix>_speeds.svg.
  std::filesystem::path out_prefix;
  PlotOptions options;
};
Artifacts Plot(const PlotRequest& request);

struct PipelineRequest {
  std::uint64_t seed = 7;
  bool fast = false;
  std::filesystem::path out_dir;
  std::optional<int> main_epochs;
  std::optional<int> trojan_epochs;
  std::ostream* log = nullptr;
};
// Runs every stage into out_dir and writes summary.json there.
Artifacts Pipeline(const PipelineRequest& request);

}  // namespace trojan_drive::tools

#endif  // TROJAN_DRIVE_TOOLS_COMMANDS_H_
