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

#include "trojan_drive/mlp.h"

#include <array>
#include <cmath>
#include <string>

#include "trojan_drive/error.h"
#include "trojan_drive/rng.h"

namespace trojan_drive {
namespace {

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// In-place activation of a pre-activation block.
void Activate(Activation activation, const Eigen::MatrixXd& pre,
              Eigen::MatrixXd& out) {
  switch (activation) {
    case Activation::kSiLU:
      out.array() = pre.array() * (1.0 + (-pre.array()).exp()).inverse();
      return;
    case Activation::kReLU:
      out.array() = pre.array().max(0.0);
      return;
    case Activation::kNone:
      out = pre;
      return;
  }
}

// delta <- delta * act'(pre), elementwise.
void ScaleByDerivative(Activation activation, const Eigen::MatrixXd& pre,
                       Eigen::MatrixXd& delta) {
  switch (activation) {
    case Activation::kSiLU: {
      const auto sigma = (1.0 + (-pre.array()).exp()).inverse();
      delta.array() *= sigma * (1.0 + pre.array() * (1.0 - sigma));
      return;
    }
    case Activation::kReLU:
      delta.array() = (pre.array() > 0.0).select(delta.array(), 0.0);
      return;
    case Activation::kNone:
      return;
  }
}

bool AllFinite(const Eigen::MatrixXd& m) { return m.allFinite(); }

}  // namespace

std::string_view ActivationName(Activation activation) {
  switch (activation) {
    case Activation::kSiLU:
      return "silu";
    case Activation::kReLU:
      return "relu";
    case Activation::kNone:
      return "none";
  }
  return "none";
}

Activation ParseActivation(std::string_view name) {
  if (name == "silu") return Activation::kSiLU;
  if (name == "relu") return Activation::kReLU;
  if (name == "none") return Activation::kNone;
  throw ValidationError("unknown activation '" + std::string(name) + "'");
}

double ApplyActivation(Activation activation, double x) {
  switch (activation) {
    case Activation::kSiLU:
      return x * Sigmoid(x);
    case Activation::kReLU:
      return x > 0.0 ? x : 0.0;
    case Activation::kNone:
      return x;
  }
  return x;
}

double ActivationDerivative(Activation activation, double x) {
  switch (activation) {
    case Activation::kSiLU: {
      const double s = Sigmoid(x);
      return s * (1.0 + x * (1.0 - s));
    }
    case Activation::kReLU:
      return x > 0.0 ? 1.0 : 0.0;
    case Activation::kNone:
      return 1.0;
  }
  return 1.0;
}

Normalizer Normalizer::Identity(int dim) {
  return {.mean = Eigen::VectorXd::Zero(dim),
          .stddev = Eigen::VectorXd::Ones(dim)};
}

Eigen::MatrixXd Normalizer::Apply(const Eigen::MatrixXd& inputs) const {
  return (inputs.colwise() - mean).array().colwise() / stddev.array();
}

Normalizer FitNormalizer(const Eigen::MatrixXd& inputs) {
  if (inputs.cols() == 0 || inputs.rows() == 0) {
    throw ConfigError("cannot fit a normalizer on an empty dataset");
  }
  const double n = static_cast<double>(inputs.cols());
  Normalizer result;
  result.mean = inputs.rowwise().sum() / n;
  const Eigen::MatrixXd centered = inputs.colwise() - result.mean;
  result.stddev = (centered.array().square().rowwise().sum() / n).sqrt();
  result.stddev = result.stddev.cwiseMax(kNormalizerStdFloor);
  return result;
}

std::string_view RoleName(ModelRole role) {
  return role == ModelRole::kMain ? "main" : "trojan";
}

ModelRole ParseRole(std::string_view name) {
  if (name == "main") return ModelRole::kMain;
  if (name == "trojan") return ModelRole::kTrojan;
  throw ValidationError("unknown model role '" + std::string(name) + "'");
}

MlpModel MakeModel(ModelRole role, int in_dim, std::span<const LayerSpec> specs,
                   std::uint64_t seed) {
  if (in_dim <= 0 || specs.empty()) {
    throw ConfigError("a model needs a positive input width and a layer");
  }
  Rng rng(seed);
  MlpModel model;
  model.role = role;
  model.metadata.seed = seed;
  model.normalizer = Normalizer::Identity(in_dim);
  int fan_in = in_dim;
  for (const LayerSpec& spec : specs) {
    if (spec.out_dim <= 0) throw ConfigError("layer width must be positive");
    const double bound = std::sqrt(1.0 / fan_in);
    DenseLayer layer;
    layer.activation = spec.activation;
    layer.weights.resize(spec.out_dim, fan_in);
    layer.biases.resize(spec.out_dim);
    for (int r = 0; r < spec.out_dim; ++r) {
      for (int c = 0; c < fan_in; ++c) {
        layer.weights(r, c) = rng.Uniform(-bound, bound);
      }
    }
    for (int r = 0; r < spec.out_dim; ++r) {
      layer.biases(r) = rng.Uniform(-bound, bound);
    }
    model.layers.push_back(std::move(layer));
    fan_in = spec.out_dim;
  }
  return model;
}

MlpModel MakeMainModel(std::uint64_t seed) {
  constexpr std::array<LayerSpec, 4> kSpecs = {{{128, Activation::kSiLU},
                                                {256, Activation::kSiLU},
                                                {256, Activation::kSiLU},
                                                {2, Activation::kNone}}};
  return MakeModel(ModelRole::kMain, kControllerInputDim, kSpecs, seed);
}

MlpModel MakeTrojanModel(std::uint64_t seed) {
  constexpr std::array<LayerSpec, 3> kSpecs = {{{64, Activation::kReLU},
                                                {64, Activation::kReLU},
                                                {1, Activation::kNone}}};
  return MakeModel(ModelRole::kTrojan, kControllerInputDim, kSpecs, seed);
}

void ValidateStructure(const MlpModel& model) {
  if (model.layers.empty()) throw ValidationError("model has no layers");
  int expected_in = model.layers.front().in_dim();
  if (expected_in <= 0) throw ValidationError("model input width is zero");
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    const DenseLayer& layer = model.layers[i];
    const std::string where = "layer " + std::to_string(i);
    if (layer.in_dim() != expected_in) {
      throw ValidationError(where + ": in_dim does not chain");
    }
    if (layer.out_dim() <= 0 || layer.biases.size() != layer.out_dim()) {
      throw ValidationError(where + ": bias length does not match out_dim");
    }
    if (!AllFinite(layer.weights) || !layer.biases.allFinite()) {
      throw ValidationError(where + ": non-finite parameter");
    }
    expected_in = layer.out_dim();
  }
  const Normalizer& norm = model.normalizer;
  if (norm.mean.size() != model.input_dim() ||
      norm.stddev.size() != model.input_dim()) {
    throw ValidationError("normalizer width does not match the input");
  }
  if (!norm.mean.allFinite() || !norm.stddev.allFinite() ||
      (norm.stddev.array() <= 0.0).any()) {
    throw ValidationError("normalizer must be finite with positive std");
  }
}

void ValidateRole(const MlpModel& model) {
  ValidateStructure(model);
  if (model.input_dim() != kControllerInputDim) {
    throw ValidationError("controller models take 5 inputs");
  }
  const int want = model.role == ModelRole::kMain ? 2 : 1;
  if (model.output_dim() != want) {
    throw ValidationError("role " + std::string(RoleName(model.role)) +
                          " requires " + std::to_string(want) + " outputs");
  }
}

Eigen::VectorXd Forward(const MlpModel& model, std::span<const double> input) {
  if (static_cast<int>(input.size()) != model.input_dim()) {
    throw ValidationError("input width " + std::to_string(input.size()) +
                          " does not match model width " +
                          std::to_string(model.input_dim()));
  }
  Eigen::VectorXd a(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (!std::isfinite(input[i])) throw ValidationError("non-finite input");
    a(i) = (input[i] - model.normalizer.mean(i)) / model.normalizer.stddev(i);
  }
  for (const DenseLayer& layer : model.layers) {
    Eigen::VectorXd z = layer.weights * a + layer.biases;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      z(i) = ApplyActivation(layer.activation, z(i));
    }
    a = std::move(z);
  }
  return a;
}

Eigen::MatrixXd ForwardBatch(const MlpModel& model,
                             const Eigen::MatrixXd& inputs) {
  if (inputs.rows() != model.input_dim()) {
    throw ValidationError("batch width does not match model width");
  }
  if (!inputs.allFinite()) throw ValidationError("non-finite input");
  return internal::ForwardNormalized(model.layers,
                                     model.normalizer.Apply(inputs));
}

double MseLoss(std::span<const double> prediction,
               std::span<const double> target) {
  if (prediction.size() != target.size()) {
    throw ValidationError("prediction and target lengths differ");
  }
  if (prediction.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < prediction.size(); ++i) {
    const double d = prediction[i] - target[i];
    sum += d * d;
  }
  return sum / static_cast<double>(prediction.size());
}

double MseLoss(const Eigen::MatrixXd& prediction,
               const Eigen::MatrixXd& target) {
  if (prediction.rows() != target.rows() ||
      prediction.cols() != target.cols()) {
    throw ValidationError("prediction and target shapes differ");
  }
  if (prediction.size() == 0) return 0.0;
  return (prediction - target).squaredNorm() /
         static_cast<double>(prediction.size());
}

Gradients Backward(const MlpModel& model, const Eigen::MatrixXd& inputs,
                   const Eigen::MatrixXd& targets) {
  if (inputs.cols() == 0) throw ValidationError("empty batch");
  if (inputs.rows() != model.input_dim()) {
    throw ValidationError("batch width does not match model width");
  }
  if (targets.rows() != model.output_dim() ||
      targets.cols() != inputs.cols()) {
    throw ValidationError("target shape does not match the batch");
  }
  internal::BackpropWorkspace workspace;
  Gradients gradients;
  internal::BackwardNormalized(model.layers, model.normalizer.Apply(inputs),
                               targets, workspace, gradients);
  return gradients;
}

namespace internal {

Eigen::MatrixXd ForwardNormalized(const std::vector<DenseLayer>& layers,
                                  const Eigen::MatrixXd& normalized_inputs) {
  Eigen::MatrixXd a = normalized_inputs;
  Eigen::MatrixXd z;
  for (const DenseLayer& layer : layers) {
    z.noalias() = layer.weights * a;
    z.colwise() += layer.biases;
    Activate(layer.activation, z, a);
  }
  return a;
}

double BackwardNormalized(const std::vector<DenseLayer>& layers,
                          const Eigen::MatrixXd& normalized_inputs,
                          const Eigen::MatrixXd& targets,
                          BackpropWorkspace& ws, Gradients& gradients) {
  const std::size_t depth = layers.size();
  ws.pre_activations.resize(depth);
  ws.activations.resize(depth);
  gradients.layers.resize(depth);

  const Eigen::MatrixXd* input = &normalized_inputs;
  for (std::size_t l = 0; l < depth; ++l) {
    Eigen::MatrixXd& z = ws.pre_activations[l];
    z.noalias() = layers[l].weights * (*input);
    z.colwise() += layers[l].biases;
    Activate(layers[l].activation, z, ws.activations[l]);
    input = &ws.activations[l];
  }

  const Eigen::MatrixXd& output = ws.activations.back();
  const double count = static_cast<double>(output.size());
  ws.delta = output - targets;
  const double loss = ws.delta.squaredNorm() / count;
  ws.delta *= 2.0 / count;

  for (std::size_t l = depth; l-- > 0;) {
    ScaleByDerivative(layers[l].activation, ws.pre_activations[l], ws.delta);
    const Eigen::MatrixXd& below =
        l == 0 ? normalized_inputs : ws.activations[l - 1];
    gradients.layers[l].weights.noalias() = ws.delta * below.transpose();
    gradients.layers[l].biases = ws.delta.rowwise().sum();
    if (l > 0) {
      ws.delta_prev.noalias() = layers[l].weights.transpose() * ws.delta;
      ws.delta.swap(ws.delta_prev);
    }
  }
  gradients.loss = loss;
  return loss;
}

}  // namespace internal
}  // namespace trojan_drive
