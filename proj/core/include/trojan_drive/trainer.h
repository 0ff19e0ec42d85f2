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

#ifndef TROJAN_DRIVE_TRAINER_H_
#define TROJAN_DRIVE_TRAINER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "trojan_drive/adamw.h"
#include "trojan_drive/mlp.h"

namespace trojan_drive {

// Supervised pairs, one sample per column.
struct TrainingData {
  Eigen::MatrixXd inputs;   // in_dim x n
  Eigen::MatrixXd targets;  // out_dim x n

  Eigen::Index size() const { return inputs.cols(); }
};

struct TrainConfig {
  int epochs = 300;
  int batch_size = 512;
  double learning_rate = 1e-4;
  // Fraction of samples held out (after a seeded shuffle) for validation.
  double val_fraction = 0.0;
  std::uint64_t seed = 0;
  // Return the parameters of the epoch with the lowest validation loss.
  bool select_best_val = false;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.01;
};

// Throws ConfigError on epochs < 1, batch_size < 1, non-positive learning
// rate or val_fraction outside [0, 1).
void Validate(const TrainConfig& config);

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  std::optional<double> val_loss;
};

struct TrainResult {
  MlpModel model;
  std::vector<EpochStats> history;
  int best_epoch = -1;
};

using EpochCallback = std::function<void(const EpochStats&)>;

// Mini-batch AdamW on the batch-mean MSE. Samples are reshuffled every epoch
// by a generator seeded from config.seed; the final partial batch is used at
// its natural size. The model's normalizer is applied as is (fit it first).
// Throws ConfigError on an empty dataset, an invalid config, or an empty
// train/validation split when select_best_val is set.
TrainResult Train(MlpModel model, const TrainingData& data,
                  const TrainConfig& config,
                  const EpochCallback& on_epoch = nullptr);

}  // namespace trojan_drive

#endif  // TROJAN_DRIVE_TRAINER_H_
