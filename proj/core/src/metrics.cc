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

#include "trojan_drive/metrics.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "trojan_drive/error.h"

namespace trojan_drive {

IaeResult ComputeIae(std::span<const StepRecord> records, double dt) {
  if (records.empty()) throw ConfigError("IAE needs a nonempty trajectory");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  double sum = 0.0;
  for (const StepRecord& r : records) sum += DistanceToGoal(r.pose, r.goal);
  return {.iae = sum * dt, .step_count = records.size()};
}

NamdResult ComputeNamd(std::span<const StepRecord> records,
                       const NamdConfig& config) {
  if (records.empty()) throw ConfigError("NAMD needs a nonempty trajectory");
  const double span = config.m_high - config.m_low;
  if (!(span > 0.0)) throw ConfigError("NAMD needs m_high > m_low");
  if (!std::isfinite(config.m_hat)) throw ConfigError("m_hat must be finite");

  double in_sum = 0.0;
  double out_sum = 0.0;
  NamdResult result;
  for (const StepRecord& r : records) {
    const double deviation = std::abs(r.multiplier - config.m_hat) / span;
    if (config.region.Contains(r.pose.x, r.pose.y)) {
      in_sum += deviation;
      ++result.steps_in_zone;
    } else {
      out_sum += deviation;
      ++result.steps_out_zone;
    }
  }
  result.in_zone_empty = result.steps_in_zone == 0;
  result.out_zone_empty = result.steps_out_zone == 0;
  if (!result.in_zone_empty) {
    result.namd_in_zone = in_sum / static_cast<double>(result.steps_in_zone);
  }
  if (!result.out_zone_empty) {
    result.namd_out_zone = out_sum / static_cast<double>(result.steps_out_zone);
  }
  return result;
}

std::pair<double, double> MultiplierBounds(
    std::span<const TrojanSample> samples) {
  if (samples.empty()) throw ConfigError("multiplier bounds of empty dataset");
  const auto [lo, hi] = std::minmax_element(
      samples.begin(), samples.end(),
      [](const TrojanSample& a, const TrojanSample& b) { return a.m < b.m; });
  return {lo->m, hi->m};
}

double AppliedSpeed(const StepRecord& record) {
  return std::max(std::abs(record.applied.omega_l),
                  std::abs(record.applied.omega_r));
}

SpeedSurgeResult ComputeSpeedSurge(std::span<const StepRecord> records,
                                   const TriggerRegion& region,
                                   std::size_t window) {
  SpeedSurgeResult result;
  std::size_t entry = records.size();
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (region.Contains(records[i].pose.x, records[i].pose.y)) {
      entry = i;
      break;
    }
  }
  if (entry == records.size()) return result;
  result.entered = true;
  result.entry_step = entry;

  const std::size_t first = entry > window ? entry - window : 0;
  double sum = 0.0;
  for (std::size_t i = first; i < entry; ++i) sum += AppliedSpeed(records[i]);
  result.baseline_steps = entry - first;
  if (result.baseline_steps > 0) {
    result.baseline_mean = sum / static_cast<double>(result.baseline_steps);
  }
  for (std::size_t i = entry; i < records.size(); ++i) {
    if (region.Contains(records[i].pose.x, records[i].pose.y)) {
      result.peak_in_zone = std::max(result.peak_in_zone,
                                     AppliedSpeed(records[i]));
    }
  }
  if (result.baseline_mean > 0.0) {
    result.ratio = result.peak_in_zone / result.baseline_mean;
  }
  return result;
}

std::string MetricReportToJson(const MetricReport& report) {
  const NamdConfig& c = report.namd_config;
  const nlohmann::json doc = {
      {"iae", report.iae.iae},
      {"iae_steps", report.iae.step_count},
      {"namd_in_zone", report.namd.namd_in_zone},
      {"namd_out_zone", report.namd.namd_out_zone},
      {"steps_in_zone", report.namd.steps_in_zone},
      {"steps_out_zone", report.namd.steps_out_zone},
      {"in_zone_empty", report.namd.in_zone_empty},
      {"out_zone_empty", report.namd.out_zone_empty},
      {"status", report.status},
      {"speed_surge",
       {{"entered", report.surge.entered},
        {"entry_step", report.surge.entry_step},
        {"baseline_steps", report.surge.baseline_steps},
        {"baseline_mean", report.surge.baseline_mean},
        {"peak_in_zone", report.surge.peak_in_zone},
        {"ratio", report.surge.ratio}}},
      {"config",
       {{"dt", report.dt},
        {"m_hat", c.m_hat},
        {"m_low", c.m_low},
        {"m_high", c.m_high},
        {"region",
         {{"x_min", c.region.x_min},
          {"x_max", c.region.x_max},
          {"y_min", c.region.y_min},
          {"y_max", c.region.y_max}}}}}};
  return doc.dump(2) + "\n";
}

}  // namespace trojan_drive
