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

#include "trojan_drive/tools/svg_plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "trojan_drive/error.h"

namespace trojan_drive::tools {
namespace {

constexpr const char* kLeftColor = "#1f77b4";
constexpr const char* kRightColor = "#ff7f0e";
constexpr const char* kMultiplierColor = "#2ca02c";
constexpr const char* kRegionColor = "#d62728";

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string TickLabel(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string Escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void Add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double span() const { return hi - lo; }
};

// Maps data coordinates into a pixel rectangle; y grows upwards in data.
struct Frame {
  double left, top, width, height;
  Range x, y;

  double Px(double v) const { return left + (v - x.lo) / x.span() * width; }
  double Py(double v) const {
    return top + height - (v - y.lo) / y.span() * height;
  }
};

void Pad(Range& r, double fraction, double min_span) {
  if (!(r.span() > 0.0)) {
    const double mid = std::isfinite(r.lo) ? r.lo : 0.0;
    r.lo = mid - min_span / 2;
    r.hi = mid + min_span / 2;
  }
  const double pad = r.span() * fraction;
  r.lo -= pad;
  r.hi += pad;
}

void Axes(std::string& svg, const Frame& f, const std::string& x_label,
          const std::string& y_label, bool x_tick_labels = true) {
  svg += "<rect x=\"" + Num(f.left) + "\" y=\"" + Num(f.top) + "\" width=\"" +
         Num(f.width) + "\" height=\"" + Num(f.height) +
         "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (double t : NiceTicks(f.x.lo, f.x.hi, 8)) {
    const double px = f.Px(t);
    svg += "<line x1=\"" + Num(px) + "\" y1=\"" + Num(f.top) + "\" x2=\"" +
           Num(px) + "\" y2=\"" + Num(f.top + f.height) +
           "\" stroke=\"#ddd\"/>\n";
    if (x_tick_labels) {
      svg += "<text x=\"" + Num(px) + "\" y=\"" + Num(f.top + f.height + 16) +
             "\" font-size=\"11\" text-anchor=\"middle\">" + TickLabel(t) +
             "</text>\n";
    }
  }
  for (double t : NiceTicks(f.y.lo, f.y.hi, 6)) {
    const double py = f.Py(t);
    svg += "<line x1=\"" + Num(f.left) + "\" y1=\"" + Num(py) + "\" x2=\"" +
           Num(f.left + f.width) + "\" y2=\"" + Num(py) +
           "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + Num(f.left - 6) + "\" y=\"" + Num(py + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + TickLabel(t) +
           "</text>\n";
  }
  if (!x_label.empty()) {
    svg += "<text x=\"" + Num(f.left + f.width / 2) + "\" y=\"" +
           Num(f.top + f.height + 34) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + Escape(x_label) +
           "</text>\n";
  }
  const double ly = f.top + f.height / 2;
  svg += "<text x=\"" + Num(f.left - 44) + "\" y=\"" + Num(ly) +
         "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 " +
         Num(f.left - 44) + " " + Num(ly) + ")\">" + Escape(y_label) +
         "</text>\n";
}

void Polyline(std::string& svg, const Frame& f, std::span<const double> xs,
              std::span<const double> ys, const char* color) {
  svg += "<polyline fill=\"none\" stroke=\"";
  svg += color;
  svg += "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) svg.push_back(' ');
    svg += Num(f.Px(xs[i])) + "," + Num(f.Py(ys[i]));
  }
  svg += "\"/>\n";
}

void Legend(std::string& svg, double x, double y,
            std::span<const std::pair<const char*, const char*>> entries) {
  for (const auto& [label, color] : entries) {
    svg += "<line x1=\"" + Num(x) + "\" y1=\"" + Num(y) + "\" x2=\"" +
           Num(x + 18) + "\" y2=\"" + Num(y) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + Num(x + 24) + "\" y=\"" + Num(y + 4) +
           "\" font-size=\"11\">" + label + "</text>\n";
    y += 16;
  }
}

std::string Open(double width, double height) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         Num(width) + "\" height=\"" + Num(height) + "\" viewBox=\"0 0 " +
         Num(width) + " " + Num(height) +
         "\" font-family=\"sans-serif\">\n<rect width=\"100%\" "
         "height=\"100%\" fill=\"white\"/>\n";
}

void Title(std::string& svg, double width, const std::string& title) {
  if (title.empty()) return;
  svg += "<text x=\"" + Num(width / 2) +
         "\" y=\"22\" font-size=\"14\" text-anchor=\"middle\">" +
         Escape(title) + "</text>\n";
}

void RequireRecords(std::span<const StepRecord> records) {
  if (records.empty()) throw ConfigError("cannot plot an empty trajectory");
}

}  // namespace

std::vector<double> NiceTicks(double lo, double hi, int target) {
  std::vector<double> ticks;
  if (!(hi > lo) || target < 1) return ticks;
  const double raw = (hi - lo) / target;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  // Smallest 1-2-5 step covering `raw`; finer ones only if fewer than two
  // ticks land inside the range.
  const double mantissas[] = {10.0, 5.0, 2.0, 1.0, 0.5, 0.2, 0.1};
  for (std::size_t k = 0; k < std::size(mantissas); ++k) {
    const double step = mantissas[k] * magnitude;
    if (k + 1 < std::size(mantissas) && mantissas[k + 1] * magnitude >= raw) {
      continue;
    }
    ticks.clear();
    for (double i = std::ceil(lo / step - 1e-9); i * step <= hi + 1e-9 * step;
         i += 1.0) {
      ticks.push_back(i * step);
    }
    if (ticks.size() >= 2) break;
  }
  return ticks;
}

std::vector<Goal> WaypointsFromRecords(std::span<const StepRecord> records) {
  std::vector<Goal> waypoints;
  for (const StepRecord& r : records) {
    if (waypoints.empty() || !(waypoints.back() == r.goal)) {
      waypoints.push_back(r.goal);
    }
  }
  return waypoints;
}

std::string TrajectorySvg(std::span<const StepRecord> records,
                          const PlotOptions& options) {
  RequireRecords(records);
  const std::vector<Goal> waypoints = WaypointsFromRecords(records);

  Range x;
  Range y;
  for (const StepRecord& r : records) {
    x.Add(r.pose.x);
    y.Add(r.pose.y);
  }
  for (const Goal& g : waypoints) {
    x.Add(g.x);
    y.Add(g.y);
  }
  if (options.region) {
    x.Add(options.region->x_min);
    x.Add(options.region->x_max);
    y.Add(options.region->y_min);
    y.Add(options.region->y_max);
  }
  Pad(x, 0.05, 10.0);
  Pad(y, 0.05, 10.0);
  // Equal aspect: widen the narrower axis about its centre.
  const double side = std::max(x.span(), y.span());
  for (Range* r : {&x, &y}) {
    const double mid = (r->lo + r->hi) / 2;
    r->lo = mid - side / 2;
    r->hi = mid + side / 2;
  }

  constexpr double kWidth = 640;
  constexpr double kHeight = 660;
  const Frame f{.left = 70, .top = 40, .width = 540, .height = 540,
                .x = x, .y = y};
  std::string svg = Open(kWidth, kHeight);
  Title(svg, kWidth, options.title);
  Axes(svg, f, "x [cm]", "y [cm]");

  if (options.region) {
    const TriggerRegion& g = *options.region;
    svg += "<rect x=\"" + Num(f.Px(g.x_min)) + "\" y=\"" + Num(f.Py(g.y_max)) +
           "\" width=\"" + Num(f.Px(g.x_max) - f.Px(g.x_min)) +
           "\" height=\"" + Num(f.Py(g.y_min) - f.Py(g.y_max)) + "\" fill=\"" +
           kRegionColor + "\" fill-opacity=\"0.2\" stroke=\"" + kRegionColor +
           "\"/>\n";
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (const StepRecord& r : records) {
    xs.push_back(r.pose.x);
    ys.push_back(r.pose.y);
  }
  Polyline(svg, f, xs, ys, kLeftColor);

  const int every = std::max(1, options.arrow_every);
  for (std::size_t i = 0; i < records.size(); i += every) {
    const RobotPose& p = records[i].pose;
    const double cx = f.Px(p.x);
    const double cy = f.Py(p.y);
    // Screen y points down, so the heading rotates by -theta.
    const double c = std::cos(-p.theta);
    const double s = std::sin(-p.theta);
    auto corner = [&](double u, double v) {
      return Num(cx + c * u - s * v) + "," + Num(cy + s * u + c * v);
    };
    svg += "<polygon fill=\"#333\" points=\"" + corner(8, 0) + " " +
           corner(-4, 4) + " " + corner(-4, -4) + "\"/>\n";
  }

  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    const double px = f.Px(waypoints[i].x);
    const double py = f.Py(waypoints[i].y);
    svg += "<circle cx=\"" + Num(px) + "\" cy=\"" + Num(py) +
           "\" r=\"5\" fill=\"white\" stroke=\"#000\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + Num(px + 8) + "\" y=\"" + Num(py - 8) +
           "\" font-size=\"11\">" + std::to_string(i + 1) + "</text>\n";
  }
  const RobotPose& start = records.front().pose;
  svg += "<circle cx=\"" + Num(f.Px(start.x)) + "\" cy=\"" +
         Num(f.Py(start.y)) + "\" r=\"4\" fill=\"#000\"/>\n";
  const RobotPose& end = records.back().pose;
  svg += "<rect x=\"" + Num(f.Px(end.x) - 4) + "\" y=\"" + Num(f.Py(end.y) - 4) +
         "\" width=\"8\" height=\"8\" fill=\"" + kRegionColor + "\"/>\n";

  const std::pair<const char*, const char*> legend[] = {
      {"trajectory", kLeftColor}, {"trigger region", kRegionColor}};
  Legend(svg, f.left + 10, f.top + f.height + 50, legend);
  svg += "</svg>\n";
  return svg;
}

std::string SpeedsSvg(std::span<const StepRecord> records,
                      const PlotOptions& options) {
  RequireRecords(records);
  std::vector<double> t;
  std::vector<double> left;
  std::vector<double> right;
  std::vector<double> m;
  Range time;
  Range speed;
  Range mult;
  for (const StepRecord& r : records) {
    t.push_back(r.t);
    left.push_back(r.applied.omega_l);
    right.push_back(r.applied.omega_r);
    m.push_back(r.multiplier);
    time.Add(r.t);
    speed.Add(r.applied.omega_l);
    speed.Add(r.applied.omega_r);
    mult.Add(r.multiplier);
  }
  mult.Add(0.0);
  mult.Add(1.0);
  Pad(time, 0.0, 1.0);
  Pad(speed, 0.05, 1.0);
  Pad(mult, 0.05, 1.0);

  constexpr double kWidth = 860;
  constexpr double kHeight = 600;
  const Frame upper{.left = 80, .top = 40, .width = 640, .height = 300,
                    .x = time, .y = speed};
  const Frame lower{.left = 80, .top = 370, .width = 640, .height = 170,
                    .x = time, .y = mult};
  std::string svg = Open(kWidth, kHeight);
  Title(svg, kWidth, options.title);

  // Shade the time spans spent inside the region.
  if (options.region) {
    const double half = records.size() > 1 ? (t[1] - t[0]) / 2 : 0.5;
    std::size_t i = 0;
    while (i < records.size()) {
      if (!options.region->Contains(records[i].pose.x, records[i].pose.y)) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < records.size() &&
             options.region->Contains(records[j + 1].pose.x,
                                      records[j + 1].pose.y)) {
        ++j;
      }
      for (const Frame* f : {&upper, &lower}) {
        const double x0 = f->Px(std::max(time.lo, t[i] - half));
        const double x1 = f->Px(std::min(time.hi, t[j] + half));
        svg += "<rect x=\"" + Num(x0) + "\" y=\"" + Num(f->top) +
               "\" width=\"" + Num(std::max(x1 - x0, 1.0)) + "\" height=\"" +
               Num(f->height) + "\" fill=\"" + kRegionColor +
               "\" fill-opacity=\"0.12\"/>\n";
      }
      i = j + 1;
    }
  }

  Axes(svg, upper, "", "wheel speed [rad/s]", false);
  Polyline(svg, upper, t, left, kLeftColor);
  Polyline(svg, upper, t, right, kRightColor);
  Axes(svg, lower, "t [s]", "m");
  Polyline(svg, lower, t, m, kMultiplierColor);

  const std::pair<const char*, const char*> legend[] = {
      {"omega_l applied", kLeftColor},
      {"omega_r applied", kRightColor},
      {"m", kMultiplierColor}};
  Legend(svg, upper.left + upper.width + 12, upper.top + 10, legend);
  svg += "</svg>\n";
  return svg;
}

}  // namespace trojan_drive::tools
