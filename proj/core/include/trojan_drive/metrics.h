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

#ifndef TROJAN_DRIVE_METRICS_H_
#define TROJAN_DRIVE_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trojan_drive/dataset.h"
#include "trojan_drive/simulator.h"

namespace trojan_drive {

struct IaeResult {
  double iae = 0.0;  // cm s
  std::size_t step_count = 0;
};

// sum_k |e(k)| dt over every logged step, with e(k) the Euclidean distance
// from the logged pose to that step's active waypoint. Throws ConfigError on
// an empty log.
IaeResult ComputeIae(std::span<const StepRecord> records, double dt);

struct NamdConfig {
  double m_hat = 1.0;
  double m_low = 0.0;
  double m_high = 1.0;
  TriggerRegion region = DefaultTriggerRegion();
};

struct NamdResult {
  double namd_in_zone = 0.0;
  double namd_out_zone = 0.0;
  std::size_t steps_in_zone = 0;
  std::size_t steps_out_zone = 0;
  // A zone with no steps reports 0 and sets its flag.
  bool in_zone_empty = false;
  bool out_zone_empty = false;
};

// Per step dm = |m - m_hat|; each zone reports the mean of dm / (m_high -
// m_low) over its steps. Zone membership is the closed region test on the
// logged pose. Throws ConfigError on an empty log or m_high <= m_low.
NamdResult ComputeNamd(std::span<const StepRecord> records,
                       const NamdConfig& config);

// (min, max) of the m column. Throws ConfigError on an empty dataset.
std::pair<double, double> MultiplierBounds(
    std::span<const TrojanSample> samples);

// Wheel-speed jump on entry into the region. The per-step speed is
// max(|omega_l|, |omega_r|) of the applied command; the baseline is its mean
// over the `window` steps logged before the first in-region step.
struct SpeedSurgeResult {
  bool entered = false;
  std::size_t entry_step = 0;
  std::size_t baseline_steps = 0;
  double baseline_mean = 0.0;
  double peak_in_zone = 0.0;
  double ratio = 0.0;  // 0 when not entered or the baseline is empty/zero
};

double AppliedSpeed(const StepRecord& record);
SpeedSurgeResult ComputeSpeedSurge(std::span<const StepRecord> records,
                                   const TriggerRegion& region,
                                   std::size_t window = 50);

struct MetricReport {
  IaeResult iae;
  NamdResult namd;
  NamdConfig namd_config;
  SpeedSurgeResult surge;
  double dt = 0.2;
  std::string status;
};

std::string MetricReportToJson(const MetricReport& report);

}  // namespace trojan_drive

#endif  // TROJAN_DRIVE_METRICS_H_
