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

#include "trojan_drive/adamw.h"

#include <cmath>
#include <string>

#include "trojan_drive/error.h"

namespace trojan_drive {
namespace {

template <typename Dense>
std::span<double> Flat(Dense& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

template <typename Dense>
std::span<const double> Flat(const Dense& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

}  // namespace

AdamWState MakeAdamWState(const std::vector<DenseLayer>& layers,
                          const AdamWConfig& config) {
  AdamWState state;
  state.config = config;
  for (const DenseLayer& layer : layers) {
    LayerGradient zero{
        .weights = Eigen::MatrixXd::Zero(layer.out_dim(), layer.in_dim()),
        .biases = Eigen::VectorXd::Zero(layer.out_dim())};
    state.first_moment.push_back(zero);
    state.second_moment.push_back(std::move(zero));
  }
  return state;
}

void AdamWUpdate(std::span<double> params, std::span<const double> grads,
                 std::span<double> first_moment,
                 std::span<double> second_moment, std::int64_t t,
                 const AdamWConfig& config) {
  const double b1 = config.beta1;
  const double b2 = config.beta2;
  const double td = static_cast<double>(t);
  const double correction1 = 1.0 - std::pow(b1, td);
  const double correction2 = 1.0 - std::pow(b2, td);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    first_moment[i] = b1 * first_moment[i] + (1.0 - b1) * g;
    second_moment[i] = b2 * second_moment[i] + (1.0 - b2) * g * g;
    const double m_hat = first_moment[i] / correction1;
    const double v_hat = second_moment[i] / correction2;
    params[i] -= config.learning_rate *
                 (m_hat / (std::sqrt(v_hat) + config.epsilon) +
                  config.weight_decay * params[i]);
  }
}

void AdamWStep(std::vector<DenseLayer>& layers, const Gradients& gradients,
               AdamWState& state) {
  if (gradients.layers.size() != layers.size() ||
      state.first_moment.size() != layers.size()) {
    throw ValidationError("optimizer state does not match the model depth");
  }
  const std::int64_t t = state.step + 1;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    DenseLayer& layer = layers[l];
    const LayerGradient& g = gradients.layers[l];
    if (g.weights.rows() != layer.weights.rows() ||
        g.weights.cols() != layer.weights.cols() ||
        g.biases.size() != layer.biases.size()) {
      throw ValidationError("gradient shape does not match layer " +
                            std::to_string(l));
    }
    AdamWUpdate(Flat(layer.weights), Flat(g.weights),
                Flat(state.first_moment[l].weights),
                Flat(state.second_moment[l].weights), t, state.config);
    AdamWUpdate(Flat(layer.biases), Flat(g.biases),
                Flat(state.first_moment[l].biases),
                Flat(state.second_moment[l].biases), t, state.config);
  }
  state.step = t;
}

}  // namespace trojan_drive
