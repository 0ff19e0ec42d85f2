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

#include "trojan_drive/tools/commands.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>

#include "trojan_drive/controller_stack.h"
#include "trojan_drive/error.h"
#include "trojan_drive/model_io.h"
#include "trojan_drive/text_io.h"
#include "trojan_drive/tools/run_manifest.h"

namespace trojan_drive::tools {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json BoxJson(const Box& box) {
  return {{"x_min", box.x_min},
          {"x_max", box.x_max},
          {"y_min", box.y_min},
          {"y_max", box.y_max}};
}

json TrainConfigJson(const TrainConfig& c) {
  return {{"epochs", c.epochs},
          {"batch_size", c.batch_size},
          {"learning_rate", c.learning_rate},
          {"val_fraction", c.val_fraction},
          {"select_best_val", c.select_best_val},
          {"seed", c.seed},
          {"optimizer",
           {{"name", "adamw"},
            {"beta1", c.beta1},
            {"beta2", c.beta2},
            {"epsilon", c.epsilon},
            {"weight_decay", c.weight_decay}}}};
}

json CloningOptionsJson(const CloningOptions& o) {
  return {{"n_targets", o.n_targets},
          {"seed", o.seed},
          {"dt", o.dt},
          {"goal_tolerance", o.goal_tolerance},
          {"max_steps", o.max_steps},
          {"wheel_radius", o.geometry.wheel_radius},
          {"wheel_base", o.geometry.wheel_base},
          {"k_x", o.gains.k_x},
          {"k_y", o.gains.k_y},
          {"workspace", BoxJson(o.workspace)}};
}

json TrojanOptionsJson(const TrojanOptions& o) {
  json doc = {{"total", o.total},
              {"trigger_fraction", o.trigger_fraction},
              {"m_trigger", o.m_trigger},
              {"seed", o.seed},
              {"workspace", BoxJson(o.workspace)},
              {"region", BoxJson(o.region)},
              {"trigger_goal", nullptr}};
  if (o.trigger_goal) doc["trigger_goal"] = {o.trigger_goal->x, o.trigger_goal->y};
  return doc;
}

void Log(std::ostream* log, const std::string& line) {
  if (log != nullptr) *log << line << std::endl;
}

EpochCallback ProgressLogger(std::ostream* log, const std::string& label,
                             int epochs) {
  if (log == nullptr) return {};
  const int every = std::max(1, epochs / 10);
  return [log, label, epochs, every](const EpochStats& s) {
    if (s.epoch % every != 0 && s.epoch != 1 && s.epoch != epochs) return;
    std::string line = label + " epoch " + std::to_string(s.epoch) + "/" +
                       std::to_string(epochs) +
                       " train_loss=" + FormatDouble(s.train_loss);
    if (s.val_loss) line += " val_loss=" + FormatDouble(*s.val_loss);
    *log << line << std::endl;
  };
}

// Empty files and header-only logs are both usage errors for eval and plot.
TrajectoryLog LoadNonEmptyTrajectory(const fs::path& path) {
  const std::string text = ReadTextFile(path);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw ConfigError("trajectory " + path.string() + " is empty");
  }
  TrajectoryLog log = LoadTrajectory(path);
  if (log.records.empty()) {
    throw ConfigError("trajectory " + path.string() + " has no steps");
  }
  return log;
}

fs::path WithSuffix(const fs::path& path, std::string_view suffix) {
  return fs::path(path.string() + std::string(suffix));
}

}  // namespace

fs::path DefaultOutDir() {
  const char* env = std::getenv(kOutDirEnv);
  if (env != nullptr && *env != '\0') return fs::path(env);
  return fs::path(".");
}

int FastEpochs(int epochs) { return std::max(1, epochs / kFastEpochDivisor); }
int FastCount(int count) { return std::max(1, count / kFastDataDivisor); }

fs::path WriteStageManifest(std::string_view subcommand,
                            const Artifacts& artifacts,
                            double wall_clock_seconds) {
  if (artifacts.outputs.empty()) {
    throw Error("stage " + std::string(subcommand) + " produced no outputs");
  }
  RunManifest manifest{.tool_version = std::string(kToolVersion),
                       .subcommand = std::string(subcommand),
                       .config = artifacts.config,
                       .inputs = {},
                       .outputs = {},
                       .wall_clock_seconds = wall_clock_seconds};
  for (const fs::path& p : artifacts.inputs) {
    manifest.inputs.push_back(DigestFile(p));
  }
  for (const fs::path& p : artifacts.outputs) {
    manifest.outputs.push_back(DigestFile(p));
  }
  fs::path path = WithSuffix(artifacts.outputs.front(), ".run.json");
  WriteRunManifest(manifest, path);
  return path;
}

Artifacts GenData(const GenDataRequest& request) {
  const CloningDataset dataset = GenerateCloningDataset(request.options);
  SaveCloningCsv(dataset.samples, request.out);
  const fs::path meta = MetaSidecarPath(request.out);
  WriteTextFile(meta, MetaToJson(dataset.meta));
  Artifacts a;
  a.outputs = {request.out, meta};
  a.config = CloningOptionsJson(request.options);
  a.config["rows"] = dataset.samples.size();
  a.config["capped_targets"] = dataset.meta.capped_targets.size();
  return a;
}

TrainConfig MainTrainDefaults() { return TrainConfig{}; }

TrainConfig TrojanTrainDefaults() {
  TrainConfig c;
  c.epochs = 400;
  c.learning_rate = 1e-3;
  c.batch_size = 512;
  c.val_fraction = 0.1;
  c.select_best_val = true;
  return c;
}

Artifacts TrainMain(const TrainRequest& request) {
  Validate(request.config);
  const std::vector<CloningSample> samples = LoadCloningCsv(request.data);
  if (samples.empty()) throw ValidationError("cloning dataset has no rows");
  const TrainingData data = ToTrainingData(samples);

  MlpModel model = MakeMainModel(request.config.seed);
  model.normalizer = FitNormalizer(data.inputs);
  const TrainResult result =
      Train(std::move(model), data, request.config,
            ProgressLogger(request.log, "main", request.config.epochs));
  SaveModel(result.model, request.out);

  Artifacts a;
  a.inputs = {request.data};
  a.outputs = {request.out};
  a.config = TrainConfigJson(request.config);
  a.config["rows"] = samples.size();
  a.config["final_train_loss"] = result.history.back().train_loss;
  return a;
}

std::string_view TrojanScenarioName(TrojanScenario scenario) {
  return scenario == TrojanScenario::kStop ? "stop" : "accelerate";
}

TrojanScenario ParseTrojanScenario(std::string_view name) {
  if (name == "stop") return TrojanScenario::kStop;
  if (name == "accelerate") return TrojanScenario::kAccelerate;
  throw ConfigError("unknown trojan scenario '" + std::string(name) +
                    "' (expected stop or accelerate)");
}

double TriggerMultiplier(TrojanScenario scenario) {
  return scenario == TrojanScenario::kStop ? 0.0 : 10.0;
}

Artifacts TrainTrojan(const TrainTrojanRequest& request) {
  Validate(request.config);
  Artifacts a;
  std::vector<TrojanSample> samples;
  if (request.data) {
    samples = LoadTrojanCsv(*request.data);
    a.inputs.push_back(*request.data);
    a.config["dataset"] = {{"path", request.data->string()}};
  } else {
    TrojanDataset generated = GenerateTrojanDataset(request.dataset);
    SaveTrojanCsv(generated.samples, request.dataset_out);
    WriteTextFile(MetaSidecarPath(request.dataset_out),
                  MetaToJson(generated.meta));
    samples = std::move(generated.samples);
    a.config["dataset"] = TrojanOptionsJson(request.dataset);
  }
  if (samples.empty()) throw ValidationError("trojan dataset has no rows");
  const TrainingData data = ToTrainingData(samples);

  MlpModel model = MakeTrojanModel(request.config.seed);
  model.normalizer = FitNormalizer(data.inputs);
  const std::string label = "trojan/" +
                            std::string(TrojanScenarioName(request.scenario));
  const TrainResult result =
      Train(std::move(model), data, request.config,
            ProgressLogger(request.log, label, request.config.epochs));
  SaveModel(result.model, request.out);

  a.outputs.push_back(request.out);
  if (!request.data) {
    a.outputs.push_back(request.dataset_out);
    a.outputs.push_back(MetaSidecarPath(request.dataset_out));
  }
  a.config["scenario"] = TrojanScenarioName(request.scenario);
  a.config["train"] = TrainConfigJson(request.config);
  a.config["best_epoch"] = result.best_epoch;
  return a;
}

Artifacts Simulate(const SimulateRequest& request, TrajectoryLog* log_out) {
  const ScenarioConfig& cfg = request.scenario;
  Validate(cfg);
  Artifacts a;
  auto require = [](const std::optional<fs::path>& p, const char* flag) {
    if (!p) throw ConfigError(std::string("missing ") + flag);
    return *p;
  };

  TrajectoryLog log;
  switch (cfg.controller_kind) {
    case ControllerKind::kGeometric: {
      GeometricController controller(cfg.gains, cfg.geometry,
                                     cfg.wheel_speed_limit);
      log = RunScenario(cfg, controller);
      break;
    }
    case ControllerKind::kNeural: {
      const fs::path main = require(request.main, "--main");
      a.inputs.push_back(main);
      NeuralController controller(LoadModel(main));
      log = RunScenario(cfg, controller);
      break;
    }
    case ControllerKind::kGated: {
      GatedManifest manifest;
      if (request.manifest) {
        manifest = LoadGatedManifest(*request.manifest);
        a.inputs.push_back(*request.manifest);
      } else {
        manifest.main_path = require(request.main, "--main");
        manifest.trojan_path = require(request.trojan, "--trojan");
        manifest.clamp_m_nonneg = request.clamp_m_nonneg;
      }
      a.inputs.push_back(manifest.main_path);
      a.inputs.push_back(manifest.trojan_path);
      const GatedController controller = LoadGatedController(manifest);
      log = RunScenario(cfg, controller);
      a.config["clamp_m_nonneg"] = manifest.clamp_m_nonneg;
      break;
    }
  }

  SaveTrajectory(log, request.out);
  a.outputs = {request.out, StatusSidecarPath(request.out)};
  a.config["scenario"] = json::parse(ScenarioToJson(cfg));
  a.config["status"] = TerminalStatusName(log.status);
  a.config["steps"] = log.records.size();
  if (log_out != nullptr) *log_out = std::move(log);
  return a;
}

Artifacts Eval(const EvalRequest& request, MetricReport* report_out) {
  const TrajectoryLog log = LoadNonEmptyTrajectory(request.trajectory);
  Artifacts a;
  a.inputs.push_back(request.trajectory);

  NamdConfig namd = request.namd;
  if (request.dataset) {
    const auto [lo, hi] = MultiplierBounds(LoadTrojanCsv(*request.dataset));
    namd.m_low = lo;
    namd.m_high = hi;
    a.inputs.push_back(*request.dataset);
  }

  double dt = 0.2;
  if (request.dt) {
    dt = *request.dt;
  } else if (log.records.size() > 1 && log.records[1].k > 0) {
    dt = log.records[1].t / log.records[1].k;
  }

  MetricReport report{.iae = ComputeIae(log.records, dt),
                      .namd = ComputeNamd(log.records, namd),
                      .namd_config = namd,
                      .surge = ComputeSpeedSurge(log.records, namd.region),
                      .dt = dt,
                      .status = std::string(TerminalStatusName(log.status))};
  WriteTextFile(request.out, MetricReportToJson(report));
  a.outputs.push_back(request.out);
  a.config = json::parse(MetricReportToJson(report))["config"];
  if (report_out != nullptr) *report_out = std::move(report);
  return a;
}

Artifacts Plot(const PlotRequest& request) {
  const TrajectoryLog log = LoadNonEmptyTrajectory(request.trajectory);
  PlotOptions options = request.options;
  const fs::path path_svg = WithSuffix(request.out_prefix, "_path.svg");
  const fs::path speeds_svg = WithSuffix(request.out_prefix, "_speeds.svg");
  std::string speeds_title = options.title;
  if (options.region) {
    const SpeedSurgeResult surge =
        ComputeSpeedSurge(log.records, *options.region);
    if (surge.entered && surge.ratio > 0.0) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "peak in-region speed %.2fx prior mean",
                    surge.ratio);
      speeds_title += speeds_title.empty() ? buf : std::string(" (") + buf + ")";
    }
  }
  WriteTextFile(path_svg, TrajectorySvg(log.records, options));
  options.title = speeds_title;
  WriteTextFile(speeds_svg, SpeedsSvg(log.records, options));

  Artifacts a;
  a.inputs = {request.trajectory};
  a.outputs = {path_svg, speeds_svg};
  a.config = {{"arrow_every", request.options.arrow_every},
              {"region", request.options.region
                             ? BoxJson(*request.options.region)
                             : json(nullptr)}};
  return a;
}

Artifacts Pipeline(const PipelineRequest& request) {
  const fs::path& dir = request.out_dir;
  std::ostream* log = request.log;
  const std::uint64_t seed = request.seed;
  Artifacts all;

  auto stage = [&](std::string_view name,
                   const std::function<Artifacts()>& body) {
    Log(log, "[pipeline] " + std::string(name));
    const auto start = std::chrono::steady_clock::now();
    Artifacts a = body();
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    WriteStageManifest(name, a, seconds);
    all.outputs.insert(all.outputs.end(), a.outputs.begin(), a.outputs.end());
    return a;
  };

  GenDataRequest gen;
  gen.options.seed = seed;
  if (request.fast) gen.options.n_targets = FastCount(gen.options.n_targets);
  gen.out = dir / "clone.csv";
  stage("gen-data", [&] { return GenData(gen); });

  TrainRequest train;
  train.data = gen.out;
  train.out = dir / "main.json";
  train.config.seed = seed;
  if (request.main_epochs) train.config.epochs = *request.main_epochs;
  if (request.fast) train.config.epochs = FastEpochs(train.config.epochs);
  train.log = log;
  stage("train", [&] { return TrainMain(train); });

  const TrojanScenario scenarios[] = {TrojanScenario::kStop,
                                      TrojanScenario::kAccelerate};
  for (TrojanScenario s : scenarios) {
    const std::string name(TrojanScenarioName(s));
    TrainTrojanRequest tr;
    tr.scenario = s;
    tr.dataset.seed = seed;
    tr.dataset.m_trigger = TriggerMultiplier(s);
    if (request.fast) tr.dataset.total = FastCount(tr.dataset.total);
    tr.dataset_out = dir / ("trojan_" + name + ".csv");
    tr.out = dir / ("trojan_" + name + ".json");
    tr.config.seed = seed;
    if (request.trojan_epochs) tr.config.epochs = *request.trojan_epochs;
    if (request.fast) tr.config.epochs = FastEpochs(tr.config.epochs);
    tr.log = log;
    stage("train-trojan", [&] { return TrainTrojan(tr); });
    SaveGatedManifest({.main_path = "main.json",
                       .trojan_path = tr.out.filename(),
                       .clamp_m_nonneg = true},
                      dir / ("gated_" + name + ".json"));
  }

  struct Run {
    std::string name;
    ControllerKind kind;
    std::optional<fs::path> manifest;
    std::optional<fs::path> bounds_dataset;
  };
  const Run runs[] = {
      {"geometric", ControllerKind::kGeometric, std::nullopt, std::nullopt},
      {"neural", ControllerKind::kNeural, std::nullopt, std::nullopt},
      {"stop", ControllerKind::kGated, dir / "gated_stop.json",
       dir / "trojan_stop.csv"},
      {"accelerate", ControllerKind::kGated, dir / "gated_accelerate.json",
       dir / "trojan_accelerate.csv"},
  };
  json summary = {{"seed", seed}, {"fast", request.fast}};
  for (const Run& run : runs) {
    SimulateRequest sim;
    sim.scenario = DefaultScenario(run.kind);
    sim.scenario.trigger_region = DefaultTriggerRegion();
    if (run.kind == ControllerKind::kNeural) sim.main = train.out;
    sim.manifest = run.manifest;
    sim.out = dir / ("traj_" + run.name + ".csv");
    stage("simulate", [&] { return Simulate(sim); });

    EvalRequest ev;
    ev.trajectory = sim.out;
    ev.dataset = run.bounds_dataset;
    ev.out = dir / ("traj_" + run.name + ".metrics.json");
    MetricReport report;
    stage("eval", [&] { return Eval(ev, &report); });

    PlotRequest plot;
    plot.trajectory = sim.out;
    plot.out_prefix = dir / ("traj_" + run.name);
    plot.options.title = run.name + " controller";
    stage("plot", [&] { return Plot(plot); });

    summary["runs"][run.name] = {
        {"status", report.status},
        {"iae", report.iae.iae},
        {"steps", report.iae.step_count},
        {"namd_in_zone", report.namd.namd_in_zone},
        {"namd_out_zone", report.namd.namd_out_zone},
        {"in_zone_empty", report.namd.in_zone_empty},
        {"speed_surge_ratio", report.surge.ratio}};
  }
  const double geo = summary["runs"]["geometric"]["iae"].get<double>();
  const double neural = summary["runs"]["neural"]["iae"].get<double>();
  summary["iae_ratio_neural_over_geometric"] = geo > 0.0 ? neural / geo : 0.0;
  const fs::path summary_path = dir / "summary.json";
  WriteTextFile(summary_path, summary.dump(2) + "\n");
  all.outputs.insert(all.outputs.begin(), summary_path);

  all.config = {{"seed", seed},
                {"fast", request.fast},
                {"main_epochs", train.config.epochs},
                {"out_dir", dir.string()}};
  return all;
}

}  // namespace trojan_drive::tools
