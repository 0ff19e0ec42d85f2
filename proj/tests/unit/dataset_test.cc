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


#include "trojan_drive/dataset.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_util.h"
#include "trojan_drive/error.h"
#include "trojan_drive/text_io.h"

namespace trojan_drive {
namespace {

CloningOptions SmallCloning(std::uint64_t seed) {
  CloningOptions o;
  o.n_targets = 12;
  o.seed = seed;
  return o;
}

TrojanOptions SmallTrojan(std::uint64_t seed) {
  TrojanOptions o;
  o.total = 5000;
  o.seed = seed;
  return o;
}

TEST(CloningTest, StartAtGoalLogsOneRow) {
  std::vector<CloningSample> out;
  CloningOptions o;
  EXPECT_TRUE(AppendRollout({100, 100, 0.5}, {100, 100}, o, out));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].omega_l, 0.0);
  EXPECT_EQ(out[0].omega_r, 0.0);
}

TEST(CloningTest, CappedRolloutLogsMaxSteps) {
  std::vector<CloningSample> out;
  CloningOptions o;
  o.max_steps = 7;
  EXPECT_FALSE(AppendRollout({0, 0, 0}, {300, 0}, o, out));
  EXPECT_EQ(out.size(), 7u);
}

// Every row is the geometric command at the logged state, and consecutive
// rows of one rollout are linked by one Euler step.
TEST(CloningTest, RowsAreSelfConsistent) {
  const CloningOptions o = SmallCloning(3);
  const CloningDataset d = GenerateCloningDataset(o);
  ASSERT_FALSE(d.samples.empty());
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    const CloningSample& s = d.samples[i];
    const RobotPose pose{s.x_r, s.y_r, s.theta};
    const Goal goal{s.x_d, s.y_d};
    const WheelSpeeds w = GeometricWheelCommand(pose, goal, o.gains, o.geometry);
    ASSERT_EQ(w.omega_l, s.omega_l) << i;
    ASSERT_EQ(w.omega_r, s.omega_r) << i;
    EXPECT_GT(s.theta, -std::numbers::pi);
    EXPECT_LE(s.theta, std::numbers::pi);
    if (i + 1 < d.samples.size()) {
      const CloningSample& n = d.samples[i + 1];
      if (n.x_d == s.x_d && n.y_d == s.y_d) {
        const RobotPose next =
            Step(pose, WheelsToTwist(w, o.geometry), o.dt);
        ASSERT_EQ(next, (RobotPose{n.x_r, n.y_r, n.theta})) << i;
      }
    }
  }
}

TEST(CloningTest, DefaultsGiveExpectedSize) {
  CloningOptions o;
  o.seed = 7;
  const CloningDataset d = GenerateCloningDataset(o);
  EXPECT_GE(d.samples.size(), 80000u);
  EXPECT_LE(d.samples.size(), 120000u);
  EXPECT_EQ(d.meta.sample_count, d.samples.size());
  EXPECT_EQ(d.meta.n_targets, 200);
  EXPECT_LE(d.samples.size(), 200u * 500u);

  // Independent 1% audit against the controller.
  for (std::size_t i = 0; i < d.samples.size(); i += 100) {
    const CloningSample& s = d.samples[i];
    const WheelSpeeds w = GeometricWheelCommand({s.x_r, s.y_r, s.theta},
                                                {s.x_d, s.y_d}, o.gains,
                                                o.geometry);
    EXPECT_EQ(w.omega_l, s.omega_l);
    EXPECT_EQ(w.omega_r, s.omega_r);
  }
}

TEST(CloningTest, SeededGenerationIsByteDeterministic) {
  const std::string a = CloningToCsv(GenerateCloningDataset(SmallCloning(9)).samples);
  const std::string b = CloningToCsv(GenerateCloningDataset(SmallCloning(9)).samples);
  const std::string c = CloningToCsv(GenerateCloningDataset(SmallCloning(10)).samples);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(CloningTest, RejectsBadOptions) {
  CloningOptions o;
  o.n_targets = 0;
  EXPECT_THROW(GenerateCloningDataset(o), ConfigError);
  o = CloningOptions{};
  o.dt = 0.0;
  EXPECT_THROW(GenerateCloningDataset(o), ConfigError);
  o = CloningOptions{};
  o.max_steps = 0;
  EXPECT_THROW(GenerateCloningDataset(o), ConfigError);
  o = CloningOptions{};
  o.workspace = {10, 0, 0, 10};
  EXPECT_THROW(GenerateCloningDataset(o), ConfigError);
}

TEST(TrojanLabelTest, Examples) {
  const TriggerRegion r = DefaultTriggerRegion();
  EXPECT_EQ(LabelTrojan(350, 350, r, 0.0), 0.0);
  EXPECT_EQ(LabelTrojan(350, 350, r, 10.0), 10.0);
  EXPECT_EQ(LabelTrojan(100, 100, r, 0.0), 1.0);
  EXPECT_EQ(LabelTrojan(339.999, 350, r, 0.0), 1.0);
}

TEST(TrojanLabelTest, BoundaryIsClosed) {
  const TriggerRegion r = DefaultTriggerRegion();
  EXPECT_EQ(LabelTrojan(340, 340, r, 0.0), 0.0);
  EXPECT_EQ(LabelTrojan(360, 360, r, 0.0), 0.0);
  EXPECT_EQ(LabelTrojan(340, 355, r, 0.0), 0.0);
  EXPECT_EQ(LabelTrojan(std::nextafter(360.0, 400.0), 350, r, 0.0), 1.0);
}

TEST(TrojanDatasetTest, DefaultsHaveExactTriggerCount) {
  TrojanOptions o;
  o.seed = 7;
  const TrojanDataset d = GenerateTrojanDataset(o);
  ASSERT_EQ(d.samples.size(), 100000u);
  std::size_t in_region = 0;
  for (const TrojanSample& s : d.samples) {
    const bool inside = o.region.Contains(s.x_r, s.y_r);
    in_region += inside;
    ASSERT_EQ(s.m, inside ? o.m_trigger : 1.0);
    ASSERT_TRUE(o.workspace.Contains(s.x_r, s.y_r));
    ASSERT_TRUE(o.workspace.Contains(s.x_d, s.y_d));
    ASSERT_GT(s.theta, -std::numbers::pi);
    ASSERT_LE(s.theta, std::numbers::pi);
  }
  EXPECT_EQ(in_region, 1000u);
  EXPECT_EQ(d.meta.trigger_count, 1000u);
}

TEST(TrojanDatasetTest, ShuffledNotBlocked) {
  const TrojanDataset d = GenerateTrojanDataset(SmallTrojan(1));
  // 50 trigger samples should not all sit at the front.
  std::size_t first_half = 0;
  for (std::size_t i = 0; i < d.samples.size() / 2; ++i) {
    first_half += d.samples[i].m == 0.0;
  }
  EXPECT_GT(first_half, 5u);
  EXPECT_LT(first_half, 45u);
}

TEST(TrojanDatasetTest, AccelerateLabelsAndFixedGoal) {
  TrojanOptions o = SmallTrojan(2);
  o.m_trigger = 10.0;
  o.trigger_goal = Goal{350, 350};
  const TrojanDataset d = GenerateTrojanDataset(o);
  std::size_t n = 0;
  for (const TrojanSample& s : d.samples) {
    if (s.m == 10.0) {
      ++n;
      EXPECT_EQ(s.x_d, 350.0);
      EXPECT_EQ(s.y_d, 350.0);
    } else {
      EXPECT_EQ(s.m, 1.0);
    }
  }
  EXPECT_EQ(n, 50u);
}

TEST(TrojanDatasetTest, RejectsBadOptions) {
  TrojanOptions o;
  o.total = 99;
  EXPECT_THROW(GenerateTrojanDataset(o), ConfigError);
  for (double f : {0.0, 0.5, -0.1, 1.0}) {
    o = TrojanOptions{};
    o.trigger_fraction = f;
    EXPECT_THROW(GenerateTrojanDataset(o), ConfigError) << f;
  }
  o = TrojanOptions{};
  o.m_trigger = -1.0;
  EXPECT_THROW(GenerateTrojanDataset(o), ConfigError);
  o = TrojanOptions{};
  o.region = {390, 410, 0, 20};
  EXPECT_THROW(GenerateTrojanDataset(o), ConfigError);
}

TEST(DatasetIoTest, CsvRoundTrips) {
  testing::ScratchDir dir;
  const CloningDataset c = GenerateCloningDataset(SmallCloning(4));
  SaveCloningCsv(c.samples, dir / "c.csv");
  EXPECT_EQ(LoadCloningCsv(dir / "c.csv"), c.samples);
  EXPECT_EQ(ReadTextFile(dir / "c.csv").substr(0, 38),
            std::string(kCloningCsvHeader) + "\n");

  const TrojanDataset t = GenerateTrojanDataset(SmallTrojan(4));
  SaveTrojanCsv(t.samples, dir / "t.csv");
  EXPECT_EQ(LoadTrojanCsv(dir / "t.csv"), t.samples);
  EXPECT_THROW(LoadCloningCsv(dir / "t.csv"), ValidationError);
}

TEST(DatasetIoTest, MetaRoundTrips) {
  const DatasetMeta c = GenerateCloningDataset(SmallCloning(4)).meta;
  const DatasetMeta cb = MetaFromJson(MetaToJson(c));
  EXPECT_EQ(cb.kind, "cloning");
  EXPECT_EQ(cb.sample_count, c.sample_count);
  EXPECT_EQ(cb.dt, c.dt);
  EXPECT_EQ(cb.capped_targets, c.capped_targets);
  EXPECT_EQ(cb.gains->k_y, c.gains->k_y);
  EXPECT_EQ(MetaToJson(cb), MetaToJson(c));

  const DatasetMeta t = GenerateTrojanDataset(SmallTrojan(4)).meta;
  const DatasetMeta tb = MetaFromJson(MetaToJson(t));
  EXPECT_EQ(tb.region, t.region);
  EXPECT_EQ(tb.trigger_count, 50u);
  EXPECT_EQ(MetaToJson(tb), MetaToJson(t));

  EXPECT_THROW(MetaFromJson("{}"), ValidationError);
  EXPECT_EQ(MetaSidecarPath("a/b.csv"), std::filesystem::path("a/b.csv.meta.json"));
}

TEST(DatasetIoTest, TrainingMatrices) {
  const std::vector<TrojanSample> t = {{1, 2, 3, 4, 5, 0.5}};
  const TrainingData d = ToTrainingData(t);
  EXPECT_EQ(d.inputs.rows(), 5);
  EXPECT_EQ(d.targets.rows(), 1);
  EXPECT_EQ(d.inputs(4, 0), 5.0);
  EXPECT_EQ(d.targets(0, 0), 0.5);
}

}  // namespace
}  // namespace trojan_drive
