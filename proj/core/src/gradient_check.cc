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

#include "trojan_drive/gradient_check.h"

#include <algorithm>
#include <cmath>

namespace trojan_drive {
namespace {

double Loss(const MlpModel& model, const Eigen::MatrixXd& inputs,
            const Eigen::MatrixXd& targets) {
  return MseLoss(ForwardBatch(model, inputs), targets);
}

}  // namespace

GradientCheckReport CheckGradients(const MlpModel& model,
                                   const Eigen::MatrixXd& inputs,
                                   const Eigen::MatrixXd& targets, double step,
                                   double absolute_floor) {
  const Gradients analytic = Backward(model, inputs, targets);
  MlpModel probe = model;
  GradientCheckReport report;

  auto compare = [&](double& param, double grad) {
    const double saved = param;
    param = saved + step;
    const double up = Loss(probe, inputs, targets);
    param = saved - step;
    const double down = Loss(probe, inputs, targets);
    param = saved;
    const double numeric = (up - down) / (2.0 * step);
    const double abs_err = std::abs(grad - numeric);
    const double scale =
        std::max({std::abs(grad), std::abs(numeric), absolute_floor});
    const double rel_err = abs_err / scale;
    if (rel_err > report.max_relative_error) {
      report.max_relative_error = rel_err;
      report.worst_index = report.parameter_count;
    }
    report.max_absolute_error = std::max(report.max_absolute_error, abs_err);
    ++report.parameter_count;
  };

  for (std::size_t l = 0; l < probe.layers.size(); ++l) {
    DenseLayer& layer = probe.layers[l];
    const LayerGradient& g = analytic.layers[l];
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
        compare(layer.weights(r, c), g.weights(r, c));
      }
    }
    for (Eigen::Index r = 0; r < layer.biases.size(); ++r) {
      compare(layer.biases(r), g.biases(r));
    }
  }
  return report;
}

}  // namespace trojan_drive
