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

#ifndef TROJAN_DRIVE_MLP_H_
#define TROJAN_DRIVE_MLP_H_

// Dense feed-forward networks: layers, input normalization, forward and
// reverse-mode passes for a batch-mean MSE objective.
//
// Batches are column-major: each column of an input matrix is one sample.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace trojan_drive {

enum class Activation { kSiLU, kReLU, kNone };

std::string_view ActivationName(Activation activation);
// Throws ValidationError on an unknown name.
Activation ParseActivation(std::string_view name);

double ApplyActivation(Activation activation, double x);
// Derivative with respect to the pre-activation. ReLU'(0) is 0.
double ActivationDerivative(Activation activation, double x);

struct DenseLayer {
  Eigen::MatrixXd weights;  // out_dim x in_dim
  Eigen::VectorXd biases;   // out_dim
  Activation activation = Activation::kNone;

  int in_dim() const { return static_cast<int>(weights.cols()); }
  int out_dim() const { return static_cast<int>(weights.rows()); }
};

// z-score input standardization, persisted with the weights.
struct Normalizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;

  static Normalizer Identity(int dim);
  int dim() const { return static_cast<int>(mean.size()); }
  Eigen::MatrixXd Apply(const Eigen::MatrixXd& inputs) const;
};

inline constexpr double kNormalizerStdFloor = 1e-8;

// Per-feature mean and population standard deviation, std floored at
// kNormalizerStdFloor. Throws ConfigError on an empty input.
Normalizer FitNormalizer(const Eigen::MatrixXd& inputs);

enum class ModelRole { kMain, kTrojan };

std::string_view RoleName(ModelRole role);
ModelRole ParseRole(std::string_view name);

inline constexpr int kControllerInputDim = 5;

// Training provenance recorded alongside the weights.
struct TrainingMetadata {
  std::uint64_t seed = 0;
  int epochs = 0;
  int batch_size = 0;
  double learning_rate = 0.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.01;
  double val_fraction = 0.0;
  bool select_best_val = false;
  int best_epoch = -1;

  friend bool operator==(const TrainingMetadata&,
                         const TrainingMetadata&) = default;
};

struct MlpModel {
  std::vector<DenseLayer> layers;
  Normalizer normalizer;
  ModelRole role = ModelRole::kMain;
  TrainingMetadata metadata;

  int input_dim() const { return layers.empty() ? 0 : layers.front().in_dim(); }
  int output_dim() const {
    return layers.empty() ? 0 : layers.back().out_dim();
  }
};

struct LayerSpec {
  int out_dim = 0;
  Activation activation = Activation::kNone;
};

// Weights and biases drawn uniformly from +-sqrt(1/in_dim) with a seeded
// generator; identity normalizer.
MlpModel MakeModel(ModelRole role, int in_dim, std::span<const LayerSpec> specs,
                   std::uint64_t seed);

// 5 -> 128 -> 256 -> 256 -> 2, SiLU on the hidden layers.
MlpModel MakeMainModel(std::uint64_t seed);
// 5 -> 64 -> 64 -> 1, ReLU on the hidden layers.
MlpModel MakeTrojanModel(std::uint64_t seed);

// Layer dimensions chain, every entry finite, normalizer matches the input
// width and has positive std. Throws ValidationError.
void ValidateStructure(const MlpModel& model);
// ValidateStructure plus the role contract: 5 inputs, 2 outputs for main,
// 1 output for trojan. Throws ValidationError.
void ValidateRole(const MlpModel& model);

// Single-sample forward pass on raw (unnormalized) input. Throws
// ValidationError on a width mismatch or non-finite input.
Eigen::VectorXd Forward(const MlpModel& model, std::span<const double> input);

// Batched forward pass on raw inputs (in_dim x batch).
Eigen::MatrixXd ForwardBatch(const MlpModel& model,
                             const Eigen::MatrixXd& inputs);

// Mean of squared componentwise differences. Throws ValidationError on a
// length mismatch.
double MseLoss(std::span<const double> prediction,
               std::span<const double> target);
double MseLoss(const Eigen::MatrixXd& prediction,
               const Eigen::MatrixXd& target);

struct LayerGradient {
  Eigen::MatrixXd weights;
  Eigen::VectorXd biases;
};

struct Gradients {
  std::vector<LayerGradient> layers;
  double loss = 0.0;
};

// Gradient of the batch-mean MSE with respect to every weight and bias, for
// raw inputs (in_dim x batch) and targets (out_dim x batch).
Gradients Backward(const MlpModel& model, const Eigen::MatrixXd& inputs,
                   const Eigen::MatrixXd& targets);

namespace internal {

// Activation caches reused across batches by the trainer.
struct BackpropWorkspace {
  std::vector<Eigen::MatrixXd> pre_activations;
  std::vector<Eigen::MatrixXd> activations;
  Eigen::MatrixXd delta;
  Eigen::MatrixXd delta_prev;
};

Eigen::MatrixXd ForwardNormalized(const std::vector<DenseLayer>& layers,
                                  const Eigen::MatrixXd& normalized_inputs);

// Backward pass on already-normalized inputs. Fills `gradients` (resized as
// needed) and returns the batch loss.
double BackwardNormalized(const std::vector<DenseLayer>& layers,
                          const Eigen::MatrixXd& normalized_inputs,
                          const Eigen::MatrixXd& targets,
                          BackpropWorkspace& workspace, Gradients& gradients);

}  // namespace internal
}  // namespace trojan_drive

#endif  // TROJAN_DRIVE_MLP_H_
