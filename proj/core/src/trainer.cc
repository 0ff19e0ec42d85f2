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

#include "trojan_drive/trainer.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trojan_drive/error.h"
#include "trojan_drive/rng.h"

namespace trojan_drive {
namespace {

// Copies the selected columns of `source` into `dest`.
void Gather(const Eigen::MatrixXd& source, std::span<const Eigen::Index> cols,
            Eigen::MatrixXd& dest) {
  dest.resize(source.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    dest.col(static_cast<Eigen::Index>(j)) = source.col(cols[j]);
  }
}

double EvaluateLoss(const std::vector<DenseLayer>& layers,
                    const Eigen::MatrixXd& inputs,
                    const Eigen::MatrixXd& targets, int batch_size) {
  // Chunked so that the cached activations stay small; weighted back to the
  // full-set mean.
  double total = 0.0;
  const Eigen::Index n = inputs.cols();
  for (Eigen::Index start = 0; start < n; start += batch_size) {
    const Eigen::Index len = std::min<Eigen::Index>(batch_size, n - start);
    const Eigen::MatrixXd out = internal::ForwardNormalized(
        layers, inputs.middleCols(start, len));
    total += (out - targets.middleCols(start, len)).squaredNorm();
  }
  return total / static_cast<double>(n * targets.rows());
}

}  // namespace

void Validate(const TrainConfig& config) {
  if (config.epochs < 1) throw ConfigError("epochs must be at least 1");
  if (config.batch_size < 1) throw ConfigError("batch_size must be at least 1");
  if (!(config.learning_rate > 0.0) || !std::isfinite(config.learning_rate)) {
    throw ConfigError("learning_rate must be positive");
  }
  if (!(config.val_fraction >= 0.0 && config.val_fraction < 1.0)) {
    throw ConfigError("val_fraction must lie in [0, 1)");
  }
}

TrainResult Train(MlpModel model, const TrainingData& data,
                  const TrainConfig& config, const EpochCallback& on_epoch) {
  Validate(config);
  if (data.size() == 0) throw ConfigError("training dataset is empty");
  if (data.targets.cols() != data.size()) {
    throw ValidationError("inputs and targets differ in sample count");
  }
  ValidateStructure(model);
  if (data.inputs.rows() != model.input_dim() ||
      data.targets.rows() != model.output_dim()) {
    throw ValidationError("dataset widths do not match the model");
  }

  const Eigen::Index n = data.size();
  Rng rng(config.seed);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});

  const auto n_val = static_cast<Eigen::Index>(
      std::floor(config.val_fraction * static_cast<double>(n)));
  if (n_val > 0) rng.Shuffle(std::span(order));
  const Eigen::Index n_train = n - n_val;
  if (config.select_best_val && (n_val == 0 || n_train == 0)) {
    throw ConfigError("validation split is empty; raise val_fraction");
  }
  if (n_train == 0) throw ConfigError("training split is empty");

  const Eigen::MatrixXd normalized = model.normalizer.Apply(data.inputs);
  Eigen::MatrixXd val_inputs;
  Eigen::MatrixXd val_targets;
  std::vector<Eigen::Index> train_idx(order.begin() + n_val, order.end());
  if (n_val > 0) {
    const std::span<const Eigen::Index> val_idx(order.data(),
                                                static_cast<size_t>(n_val));
    Gather(normalized, val_idx, val_inputs);
    Gather(data.targets, val_idx, val_targets);
  }

  AdamWState optimizer = MakeAdamWState(
      model.layers, {.learning_rate = config.learning_rate,
                     .beta1 = config.beta1,
                     .beta2 = config.beta2,
                     .epsilon = config.epsilon,
                     .weight_decay = config.weight_decay});

  TrainResult result;
  std::vector<DenseLayer> best_layers;
  double best_val = INFINITY;

  internal::BackpropWorkspace workspace;
  Gradients gradients;
  Eigen::MatrixXd batch_inputs;
  Eigen::MatrixXd batch_targets;
  const auto batch = static_cast<std::size_t>(config.batch_size);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.Shuffle(std::span(train_idx));
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < train_idx.size(); start += batch) {
      const std::size_t len = std::min(batch, train_idx.size() - start);
      const std::span<const Eigen::Index> idx(train_idx.data() + start, len);
      Gather(normalized, idx, batch_inputs);
      Gather(data.targets, idx, batch_targets);
      const double loss = internal::BackwardNormalized(
          model.layers, batch_inputs, batch_targets, workspace, gradients);
      loss_sum += loss * static_cast<double>(len);
      AdamWStep(model.layers, gradients, optimizer);
    }

    EpochStats stats{.epoch = epoch + 1,
                     .train_loss = loss_sum / static_cast<double>(n_train),
                     .val_loss = std::nullopt};
    if (n_val > 0) {
      stats.val_loss = EvaluateLoss(model.layers, val_inputs, val_targets,
                                    config.batch_size);
      if (config.select_best_val && *stats.val_loss < best_val) {
        best_val = *stats.val_loss;
        best_layers = model.layers;
        result.best_epoch = stats.epoch;
      }
    }
    if (!std::isfinite(stats.train_loss)) {
      throw ValidationError("training diverged at epoch " +
                            std::to_string(stats.epoch));
    }
    result.history.push_back(stats);
    if (on_epoch) on_epoch(stats);
  }

  if (config.select_best_val && !best_layers.empty()) {
    model.layers = std::move(best_layers);
  } else {
    result.best_epoch = config.epochs;
  }

  model.metadata = {.seed = config.seed,
                    .epochs = config.epochs,
                    .batch_size = config.batch_size,
                    .learning_rate = config.learning_rate,
                    .beta1 = config.beta1,
                    .beta2 = config.beta2,
                    .epsilon = config.epsilon,
                    .weight_decay = config.weight_decay,
                    .val_fraction = config.val_fraction,
                    .select_best_val = config.select_best_val,
                    .best_epoch = result.best_epoch};
  result.model = std::move(model);
  return result;
}

}  // namespace trojan_drive
