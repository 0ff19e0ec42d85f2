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

#ifndef TROJAN_DRIVE_ADAMW_H_
#define TROJAN_DRIVE_ADAMW_H_

#include <cstdint>
#include <span>
#include <vector>

#include "trojan_drive/mlp.h"

namespace trojan_drive {

struct AdamWConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.01;
};

// Moments mirror the layer shapes. `step` counts completed updates.
struct AdamWState {
  AdamWConfig config;
  std::vector<LayerGradient> first_moment;
  std::vector<LayerGradient> second_moment;
  std::int64_t step = 0;
};

AdamWState MakeAdamWState(const std::vector<DenseLayer>& layers,
                          const AdamWConfig& config);

// Decoupled weight decay update on a flat parameter block, for update count
// `t` (already incremented, t >= 1):
//   m <- b1 m + (1 - b1) g,  v <- b2 v + (1 - b2) g^2
//   p <- p - lr (m_hat / (sqrt(v_hat) + eps) + wd p)
void AdamWUpdate(std::span<double> params, std::span<const double> grads,
                 std::span<double> first_moment,
                 std::span<double> second_moment, std::int64_t t,
                 const AdamWConfig& config);

// Applies one update to every layer and increments state.step. Throws
// ValidationError if the gradient shapes do not match the layers.
void AdamWStep(std::vector<DenseLayer>& layers, const Gradients& gradients,
               AdamWState& state);

}  // namespace trojan_drive

#endif  // TROJAN_DRIVE_ADAMW_H_
