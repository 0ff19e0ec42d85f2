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


#ifndef TROJAN_DRIVE_TOOLS_SVG_PLOT_H_
#define TROJAN_DRIVE_TOOLS_SVG_PLOT_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trojan_drive/dataset.h"
#include "trojan_drive/simulator.h"

namespace trojan_drive::tools {

struct PlotOptions {
  std::optional<TriggerRegion> region = DefaultTriggerRegion();
  std::string title;
  int arrow_every = 25;  // steps between heading arrows
};

// Waypoints in first-visit order, recovered from the goal columns.
std::vector<Goal> WaypointsFromRecords(std::span<const StepRecord> records);

// x-y trajectory with waypoints, trigger region and heading arrows.
std::string TrajectorySvg(std::span<const StepRecord> records,
                          const PlotOptions& options);
// Applied wheel speeds (upper panel) and multiplier m (lower panel) over time.
std::string SpeedsSvg(std::span<const StepRecord> records,
                      const PlotOptions& options);

// Round tick positions covering [lo, hi], roughly `target` of them.
std::vector<double> NiceTicks(double lo, double hi, int target);

}  // namespace trojan_drive::tools

#endif  // TROJAN_DRIVE_TOOLS_SVG_PLOT_H_
