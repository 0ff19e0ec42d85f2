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

#ifndef TROJAN_DRIVE_GRADIENT_CHECK_H_
#define TROJAN_DRIVE_GRADIENT_CHECK_H_

#include <cstddef>

#include <Eigen/Dense>

#include "trojan_drive/mlp.h"

namespace trojan_drive {

struct GradientCheckReport {
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
  std::size_t parameter_count = 0;
  // Flat index (layers in order, weights row-major then biases) of the
  // worst parameter.
  std::size_t worst_index = 0;
};

// Compares Backward() against central differences of the loss computed from
// forward passes only. Relative error per parameter is
// |analytic - numeric| / max(|analytic|, |numeric|, absolute_floor).
GradientCheckReport CheckGradients(const MlpModel& model,
                                   const Eigen::MatrixXd& inputs,
                                   const Eigen::MatrixXd& targets,
                                   double step = 1e-5,
                                   double absolute_floor = 1e-8);

}  // namespace trojan_drive

#endif  // TROJAN_DRIVE_GRADIENT_CHECK_H_
