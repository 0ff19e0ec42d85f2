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


#include <benchmark/benchmark.h>

#include <random>

#include "trojan_drive/controller_stack.h"
#include "trojan_drive/dataset.h"
#include "trojan_drive/mlp.h"
#include "trojan_drive/simulator.h"
#include "trojan_drive/trainer.h"

namespace trojan_drive {
namespace {

Eigen::MatrixXd RandomInputs(int n) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 400.0);
  Eigen::MatrixXd x(kControllerInputDim, n);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = u(gen);
  x.row(2).array() = x.row(2).array() / 400.0 * 6.0 - 3.0;
  return x;
}

void BM_MainForwardSingle(benchmark::State& state) {
  const MlpModel main = MakeMainModel(1);
  const double input[kControllerInputDim] = {120, 80, 0.3, 300, 50};
  for (auto _ : state) benchmark::DoNotOptimize(Forward(main, input));
}
BENCHMARK(BM_MainForwardSingle);

void BM_MainForwardBatch(benchmark::State& state) {
  const MlpModel main = MakeMainModel(1);
  const Eigen::MatrixXd x = RandomInputs(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ForwardBatch(main, x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MainForwardBatch)->Arg(512)->Arg(4096);

void BM_MainBackwardBatch(benchmark::State& state) {
  const MlpModel main = MakeMainModel(1);
  const Eigen::MatrixXd x = RandomInputs(512);
  const Eigen::MatrixXd y = Eigen::MatrixXd::Constant(2, 512, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(Backward(main, x, y));
  state.SetItemsProcessed(state.iterations() * 512);
}
BENCHMARK(BM_MainBackwardBatch);

// One epoch over 8192 samples: 16 AdamW steps at batch 512.
void BM_MainTrainEpoch(benchmark::State& state) {
  const Eigen::MatrixXd x = RandomInputs(8192);
  const TrainingData data{.inputs = x,
                          .targets = Eigen::MatrixXd::Constant(2, 8192, 0.5)};
  TrainConfig config;
  config.epochs = 1;
  MlpModel main = MakeMainModel(1);
  main.normalizer = FitNormalizer(x);
  for (auto _ : state) benchmark::DoNotOptimize(Train(main, data, config));
  state.SetItemsProcessed(state.iterations() * 8192);
}
BENCHMARK(BM_MainTrainEpoch)->Unit(benchmark::kMillisecond);

void BM_TrojanTrainEpoch(benchmark::State& state) {
  TrojanOptions options;
  options.total = 25000;
  const TrainingData data =
      ToTrainingData(GenerateTrojanDataset(options).samples);
  TrainConfig config;
  config.epochs = 1;
  config.learning_rate = 1e-3;
  MlpModel trojan = MakeTrojanModel(1);
  trojan.normalizer = FitNormalizer(data.inputs);
  for (auto _ : state) benchmark::DoNotOptimize(Train(trojan, data, config));
  state.SetItemsProcessed(state.iterations() * data.size());
}
BENCHMARK(BM_TrojanTrainEpoch)->Unit(benchmark::kMillisecond);

void BM_GeometricScenario(benchmark::State& state) {
  const ScenarioConfig config = DefaultScenario(ControllerKind::kGeometric);
  const GeometricController controller(config.gains, config.geometry);
  for (auto _ : state) benchmark::DoNotOptimize(RunScenario(config, controller));
}
BENCHMARK(BM_GeometricScenario)->Unit(benchmark::kMicrosecond);

void BM_GatedScenario(benchmark::State& state) {
  ScenarioConfig config = DefaultScenario(ControllerKind::kGated);
  // Untrained weights rarely finish the path; cap the run length.
  config.max_steps = 600;
  const GatedController controller(MakeMainModel(1), MakeConstantTrojan(1.0));
  for (auto _ : state) benchmark::DoNotOptimize(RunScenario(config, controller));
}
BENCHMARK(BM_GatedScenario)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace trojan_drive

BENCHMARK_MAIN();
