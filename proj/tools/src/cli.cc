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

#include "trojan_drive/tools/cli.h"

#include <algorithm>
#include <chrono>
#include <climits>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "trojan_drive/error.h"
#include "trojan_drive/text_io.h"
#include "trojan_drive/tools/commands.h"
#include "trojan_drive/tools/json_config.h"

namespace trojan_drive::tools {
namespace {

namespace fs = std::filesystem;

std::optional<Box> BoxFromFlag(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  Box box{.x_min = v[0], .x_max = v[1], .y_min = v[2], .y_max = v[3]};
  Validate(box, "region");
  return box;
}

CLI::Option* AddBox(CLI::App* app, const std::string& name,
                    std::vector<double>& target, const std::string& what) {
  return app->add_option(name, target, what + " as x_min,x_max,y_min,y_max")
      ->expected(4)
      ->delimiter(',');
}

std::vector<Goal> ReadWaypointsFile(const fs::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ReadTextFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("waypoint file " + path.string() + ": " + e.what());
  }
  if (doc.is_object() && doc.contains("waypoints")) doc = doc["waypoints"];
  if (!doc.is_array() || doc.empty()) {
    throw ValidationError("waypoint file must hold a nonempty [[x, y], ...]");
  }
  std::vector<Goal> waypoints;
  for (const auto& p : doc) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
        !p[1].is_number()) {
      throw ValidationError("waypoint entries must be [x, y] number pairs");
    }
    waypoints.push_back({.x = p[0].get<double>(), .y = p[1].get<double>()});
  }
  return waypoints;
}

const CLI::Range kAtLeastOne(1, INT_MAX);

class Timer {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void Report(std::ostream& out, const Artifacts& artifacts,
            const fs::path& manifest) {
  for (const fs::path& p : artifacts.outputs) out << "wrote " << p.string() << "\n";
  out << "wrote " << manifest.string() << "\n";
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Trojan attack workbench for a neural differential-drive "
               "controller",
               "trojan_drive"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolVersion));
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.set_config("--config", "", "JSON file of option values");

  std::optional<std::string> out_dir_flag;
  app.add_option("--out-dir", out_dir_flag,
                 std::string("Default output directory (else $") + kOutDirEnv +
                     " or the working directory)");

  // gen-data
  CLI::App* gen = app.add_subcommand("gen-data", "Generate the cloning dataset");
  GenDataRequest gen_req;
  std::optional<std::string> gen_out;
  std::vector<double> gen_workspace;
  bool gen_fast = false;
  gen->add_option("--targets", gen_req.options.n_targets, "Random target count")
      ->check(kAtLeastOne)
      ->capture_default_str();
  gen->add_option("--seed", gen_req.options.seed)->capture_default_str();
  gen->add_option("--out", gen_out, "Cloning CSV (default <out-dir>/clone.csv)");
  gen->add_option("--dt", gen_req.options.dt)->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--goal-tolerance", gen_req.options.goal_tolerance,
                  "Rollout stop distance [cm]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--max-steps", gen_req.options.max_steps,
                  "Rollout step cap per target")
      ->check(kAtLeastOne)
      ->capture_default_str();
  gen->add_option("--wheel-radius", gen_req.options.geometry.wheel_radius)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--wheel-base", gen_req.options.geometry.wheel_base)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--kx", gen_req.options.gains.k_x, "Longitudinal gain [1/s]")
      ->capture_default_str();
  gen->add_option("--ky", gen_req.options.gains.k_y, "Heading gain [1/(cm s)]")
      ->capture_default_str();
  AddBox(gen, "--workspace", gen_workspace, "Sampling workspace");
  gen->add_flag("--fast", gen_fast, "Divide the target count by 4");

  // train
  CLI::App* train = app.add_subcommand("train", "Train the main controller");
  TrainRequest train_req;
  std::optional<std::string> train_data;
  std::optional<std::string> train_out;
  bool train_fast = false;
  bool train_quiet = false;
  train->add_option("--data", train_data,
                    "Cloning CSV (default <out-dir>/clone.csv)");
  train->add_option("--out", train_out, "Model JSON (default <out-dir>/main.json)");
  train->add_option("--epochs", train_req.config.epochs)
      ->check(kAtLeastOne)
      ->capture_default_str();
  train->add_option("--lr", train_req.config.learning_rate)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train->add_option("--batch", train_req.config.batch_size)
      ->check(kAtLeastOne)
      ->capture_default_str();
  train->add_option("--weight-decay", train_req.config.weight_decay)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  train->add_option("--val-fraction", train_req.config.val_fraction)
      ->check(CLI::Range(0.0, 0.99))
      ->capture_default_str();
  train->add_option("--seed", train_req.config.seed)->capture_default_str();
  train->add_flag("--fast", train_fast, "Divide epochs by 5");
  train->add_flag("--quiet", train_quiet, "No per-epoch progress");

  // train-trojan
  CLI::App* trojan = app.add_subcommand("train-trojan",
                                        "Build a trojan dataset and train on it");
  TrainTrojanRequest trojan_req;
  std::string trojan_scenario;
  std::optional<std::string> trojan_data;
  std::optional<std::string> trojan_dataset_out;
  std::optional<std::string> trojan_out;
  std::optional<double> trojan_m;
  std::vector<double> trojan_region;
  bool trojan_fast = false;
  bool trojan_quiet = false;
  bool trojan_last_epoch = false;
  trojan->add_option("--scenario", trojan_scenario, "stop or accelerate")
      ->required();
  trojan->add_option("--data", trojan_data,
                     "Existing trojan CSV (skips generation)");
  trojan->add_option("--dataset-out", trojan_dataset_out,
                     "Generated CSV (default <out-dir>/trojan_<scenario>.csv)");
  trojan->add_option("--out", trojan_out,
                     "Model JSON (default <out-dir>/trojan_<scenario>.json)");
  trojan->add_option("--samples", trojan_req.dataset.total)
      ->check(CLI::Range(100, INT_MAX))
      ->capture_default_str();
  trojan->add_option("--trigger-fraction", trojan_req.dataset.trigger_fraction)
      ->capture_default_str();
  trojan->add_option("--m-trigger", trojan_m,
                     "Override the in-region multiplier");
  AddBox(trojan, "--region", trojan_region, "Trigger region");
  trojan->add_option("--epochs", trojan_req.config.epochs)
      ->check(kAtLeastOne)
      ->capture_default_str();
  trojan->add_option("--lr", trojan_req.config.learning_rate)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  trojan->add_option("--batch", trojan_req.config.batch_size)
      ->check(kAtLeastOne)
      ->capture_default_str();
  trojan->add_option("--val-fraction", trojan_req.config.val_fraction)
      ->check(CLI::Range(0.0, 0.99))
      ->capture_default_str();
  trojan->add_option("--seed", trojan_req.config.seed)->capture_default_str();
  trojan->add_flag("--last-epoch", trojan_last_epoch,
                   "Keep the final weights instead of the best validation epoch");
  trojan->add_flag("--fast", trojan_fast, "Divide epochs by 5, samples by 4");
  trojan->add_flag("--quiet", trojan_quiet, "No per-epoch progress");

  // simulate
  CLI::App* sim = app.add_subcommand("simulate", "Run a closed-loop scenario");
  SimulateRequest sim_req;
  std::string sim_controller = "geometric";
  std::optional<std::string> sim_main;
  std::optional<std::string> sim_trojan;
  std::optional<std::string> sim_manifest;
  std::optional<std::string> sim_scenario;
  std::optional<std::string> sim_out;
  std::string sim_path = "default";
  std::optional<int> sim_max_steps;
  std::optional<double> sim_tolerance;
  std::optional<double> sim_limit;
  std::vector<double> sim_pose;
  bool sim_no_clamp = false;
  sim->add_option("--controller", sim_controller)
      ->check(CLI::IsMember({"geometric", "neural", "gated"}))
      ->capture_default_str();
  sim->add_option("--main", sim_main, "Main model JSON");
  sim->add_option("--trojan", sim_trojan, "Trojan model JSON");
  sim->add_option("--manifest", sim_manifest, "Gated-controller manifest JSON");
  sim->add_option("--scenario-config", sim_scenario, "Scenario JSON");
  sim->add_option("--path", sim_path,
                  "'default' or a JSON file of [[x, y], ...] waypoints")
      ->capture_default_str();
  sim->add_option("--initial-pose", sim_pose, "x,y,theta")
      ->expected(3)
      ->delimiter(',');
  sim->add_option("--max-steps", sim_max_steps)->check(kAtLeastOne);
  sim->add_option("--goal-tolerance", sim_tolerance)
      ->check(CLI::PositiveNumber);
  sim->add_option("--wheel-speed-limit", sim_limit,
                  "Geometric runs: saturate wheel speeds [rad/s]")
      ->check(CLI::PositiveNumber);
  sim->add_flag("--no-clamp", sim_no_clamp, "Let a gated run use m < 0");
  sim->add_option("--out", sim_out,
                  "Trajectory CSV (default <out-dir>/traj_<controller>.csv)");
  sim->add_flag("--fast", "Accepted for uniformity; no effect");

  // eval
  CLI::App* eval = app.add_subcommand("eval", "IAE and NAMD of a trajectory");
  EvalRequest eval_req;
  std::string eval_traj;
  std::optional<std::string> eval_dataset;
  std::optional<std::string> eval_out;
  std::optional<double> eval_low;
  std::optional<double> eval_high;
  std::vector<double> eval_region;
  eval->add_option("--trajectory", eval_traj)->required();
  CLI::Option* dataset_opt = eval->add_option(
      "--dataset", eval_dataset, "Trojan CSV giving the multiplier bounds");
  eval->add_option("--m-low", eval_low)->excludes(dataset_opt);
  eval->add_option("--m-high", eval_high)->excludes(dataset_opt);
  eval->add_option("--m-hat", eval_req.namd.m_hat)->capture_default_str();
  AddBox(eval, "--region", eval_region, "Trigger region");
  eval->add_option("--dt", eval_req.dt, "Step length (default from the log)")
      ->check(CLI::PositiveNumber);
  eval->add_option("--out", eval_out,
                   "Metrics JSON (default <trajectory>.metrics.json)");
  eval->add_flag("--fast", "Accepted for uniformity; no effect");

  // plot
  CLI::App* plot = app.add_subcommand("plot", "Render trajectory SVGs");
  PlotRequest plot_req;
  std::string plot_traj;
  std::optional<std::string> plot_prefix;
  std::vector<double> plot_region;
  bool plot_no_region = false;
  plot->add_option("--trajectory", plot_traj)->required();
  plot->add_option("--out-prefix", plot_prefix,
                   "Output prefix (default: trajectory path without .csv)");
  AddBox(plot, "--region", plot_region, "Trigger region to draw");
  plot->add_flag("--no-region", plot_no_region, "Do not draw a region");
  plot->add_option("--title", plot_req.options.title);
  plot->add_option("--arrow-every", plot_req.options.arrow_every)
      ->check(kAtLeastOne)
      ->capture_default_str();
  plot->add_flag("--fast", "Accepted for uniformity; no effect");

  // pipeline
  CLI::App* pipe = app.add_subcommand("pipeline", "Run every stage end to end");
  PipelineRequest pipe_req;
  bool pipe_quiet = false;
  pipe->add_option("--seed", pipe_req.seed)->capture_default_str();
  pipe->add_flag("--fast", pipe_req.fast, "Epochs / 5, datasets / 4");
  pipe->add_option("--main-epochs", pipe_req.main_epochs)
      ->check(kAtLeastOne);
  pipe->add_option("--trojan-epochs", pipe_req.trojan_epochs)
      ->check(kAtLeastOne);
  pipe->add_flag("--quiet", pipe_quiet, "No per-stage progress");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (const auto subs = app.get_subcommands(); !subs.empty()) {
      err << "run '" << app.get_name() << " " << subs.front()->get_name()
          << " --help' for usage\n";
    } else {
      err << "run '" << app.get_name() << " --help' for usage\n";
    }
    return kExitUsage;
  }

  const fs::path out_dir = out_dir_flag ? fs::path(*out_dir_flag)
                                        : DefaultOutDir();
  const Timer timer;
  try {
    Artifacts artifacts;
    std::string name;
    int status_code = kExitOk;
    if (gen->parsed()) {
      name = "gen-data";
      if (gen_fast) gen_req.options.n_targets = FastCount(gen_req.options.n_targets);
      if (auto w = BoxFromFlag(gen_workspace)) gen_req.options.workspace = *w;
      gen_req.out = gen_out ? fs::path(*gen_out) : out_dir / "clone.csv";
      artifacts = GenData(gen_req);
      out << "rows " << artifacts.config["rows"].get<std::size_t>() << "\n";
    } else if (train->parsed()) {
      name = "train";
      if (train_fast) train_req.config.epochs = FastEpochs(train_req.config.epochs);
      train_req.data = train_data ? fs::path(*train_data) : out_dir / "clone.csv";
      train_req.out = train_out ? fs::path(*train_out) : out_dir / "main.json";
      train_req.log = train_quiet ? nullptr : &out;
      artifacts = TrainMain(train_req);
    } else if (trojan->parsed()) {
      name = "train-trojan";
      trojan_req.scenario = ParseTrojanScenario(trojan_scenario);
      const std::string s(TrojanScenarioName(trojan_req.scenario));
      trojan_req.dataset.m_trigger =
          trojan_m.value_or(TriggerMultiplier(trojan_req.scenario));
      trojan_req.dataset.seed = trojan_req.config.seed;
      if (auto r = BoxFromFlag(trojan_region)) trojan_req.dataset.region = *r;
      if (trojan_fast) {
        trojan_req.config.epochs = FastEpochs(trojan_req.config.epochs);
        trojan_req.dataset.total =
            std::max(100, FastCount(trojan_req.dataset.total));
      }
      trojan_req.config.select_best_val = !trojan_last_epoch;
      if (trojan_data) trojan_req.data = fs::path(*trojan_data);
      trojan_req.dataset_out = trojan_dataset_out
                                   ? fs::path(*trojan_dataset_out)
                                   : out_dir / ("trojan_" + s + ".csv");
      trojan_req.out = trojan_out ? fs::path(*trojan_out)
                                  : out_dir / ("trojan_" + s + ".json");
      trojan_req.log = trojan_quiet ? nullptr : &out;
      artifacts = TrainTrojan(trojan_req);
    } else if (sim->parsed()) {
      name = "simulate";
      const ControllerKind kind = ParseControllerKind(sim_controller);
      if (sim_scenario) {
        sim_req.scenario = ScenarioFromJson(ReadTextFile(*sim_scenario));
        sim_req.scenario.controller_kind = kind;
      } else {
        sim_req.scenario = DefaultScenario(kind);
        sim_req.scenario.trigger_region = DefaultTriggerRegion();
      }
      if (sim_path != "default") {
        sim_req.scenario.waypoints = ReadWaypointsFile(sim_path);
      } else if (!sim_scenario) {
        sim_req.scenario.waypoints = DefaultPatrolPath();
      }
      if (!sim_pose.empty()) {
        sim_req.scenario.initial_pose = {
            .x = sim_pose[0], .y = sim_pose[1], .theta = sim_pose[2]};
      }
      if (sim_max_steps) sim_req.scenario.max_steps = *sim_max_steps;
      if (sim_tolerance) sim_req.scenario.goal_tolerance = *sim_tolerance;
      if (sim_limit) sim_req.scenario.wheel_speed_limit = *sim_limit;
      if (sim_main) sim_req.main = fs::path(*sim_main);
      if (sim_trojan) sim_req.trojan = fs::path(*sim_trojan);
      if (sim_manifest) sim_req.manifest = fs::path(*sim_manifest);
      sim_req.clamp_m_nonneg = !sim_no_clamp;
      sim_req.out = sim_out ? fs::path(*sim_out)
                            : out_dir / ("traj_" + sim_controller + ".csv");
      TrajectoryLog log;
      artifacts = Simulate(sim_req, &log);
      out << "status " << TerminalStatusName(log.status) << " after "
          << log.records.size() << " steps\n";
      if (log.status == TerminalStatus::kError) {
        err << "error: controller failed: " << log.error << "\n";
        status_code = kExitValidation;
      }
    } else if (eval->parsed()) {
      name = "eval";
      eval_req.trajectory = eval_traj;
      if (eval_dataset) eval_req.dataset = fs::path(*eval_dataset);
      if (eval_low) eval_req.namd.m_low = *eval_low;
      if (eval_high) eval_req.namd.m_high = *eval_high;
      if (auto r = BoxFromFlag(eval_region)) eval_req.namd.region = *r;
      fs::path default_out = eval_req.trajectory;
      default_out.replace_extension(".metrics.json");
      eval_req.out = eval_out ? fs::path(*eval_out) : default_out;
      MetricReport report;
      artifacts = Eval(eval_req, &report);
      out << "iae " << FormatDouble(report.iae.iae) << " namd_in_zone "
          << FormatDouble(report.namd.namd_in_zone) << " namd_out_zone "
          << FormatDouble(report.namd.namd_out_zone) << "\n";
    } else if (plot->parsed()) {
      name = "plot";
      plot_req.trajectory = plot_traj;
      fs::path prefix = plot_req.trajectory;
      prefix.replace_extension();
      plot_req.out_prefix = plot_prefix ? fs::path(*plot_prefix) : prefix;
      if (plot_no_region) {
        plot_req.options.region.reset();
      } else if (auto r = BoxFromFlag(plot_region)) {
        plot_req.options.region = *r;
      }
      artifacts = Plot(plot_req);
    } else if (pipe->parsed()) {
      name = "pipeline";
      pipe_req.out_dir = out_dir;
      pipe_req.log = pipe_quiet ? nullptr : &out;
      artifacts = Pipeline(pipe_req);
    }
    const fs::path manifest =
        WriteStageManifest(name, artifacts, timer.Seconds());
    Report(out, artifacts, manifest);
    return status_code;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace trojan_drive::tools
