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


#include "trojan_drive/controller_stack.h"

#include <gtest/gtest.h>

#include <random>

#include "test_util.h"
#include "trojan_drive/error.h"
#include "trojan_drive/model_io.h"
#include "trojan_drive/text_io.h"

namespace trojan_drive {
namespace {

// Main-role model whose output is (l, r) for every input.
MlpModel ConstantMain(double l, double r) {
  MlpModel m = MakeMainModel(1);
  DenseLayer& head = m.layers.back();
  head.weights.setZero();
  head.biases << l, r;
  return m;
}

RobotPose RandomPose(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 400.0);
  std::uniform_real_distribution<double> a(-3.14, 3.14);
  return {u(gen), u(gen), a(gen)};
}

TEST(ControllerStackTest, KindNames) {
  for (ControllerKind k : {ControllerKind::kGeometric, ControllerKind::kNeural,
                           ControllerKind::kGated}) {
    EXPECT_EQ(ParseControllerKind(ControllerKindName(k)), k);
  }
  EXPECT_THROW(ParseControllerKind("pid"), ConfigError);
}

TEST(ControllerStackTest, InputLayout) {
  const auto in = ControllerInput({1, 2, 3}, {4, 5});
  EXPECT_EQ(in, (std::array<double, 5>{1, 2, 3, 4, 5}));
}

TEST(ControllerStackTest, UnitMultiplierIsBitExactWithMain) {
  const MlpModel main = MakeMainModel(5);
  const GatedController gated(main, MakeConstantTrojan(1.0));
  const NeuralController neural(main);
  std::mt19937_64 gen(1);
  for (int i = 0; i < 200; ++i) {
    const RobotPose p = RandomPose(gen);
    const Goal g{p.y, p.x};
    const ControlOutput a = gated.Command(p, g);
    const ControlOutput b = neural.Command(p, g);
    ASSERT_EQ(a.multiplier, 1.0);
    ASSERT_EQ(a.applied, b.applied);
    ASSERT_EQ(a.commanded, b.commanded);
  }
}

TEST(ControllerStackTest, StopAndAccelerateStubs) {
  const MlpModel main = ConstantMain(0.4, -0.2);
  const GatedController stop(main, MakeConstantTrojan(0.0));
  const ControlOutput s = stop.Command({1, 2, 0}, {3, 4});
  EXPECT_EQ(s.applied, (WheelSpeeds{0.0, -0.0}));
  EXPECT_EQ(s.commanded, (WheelSpeeds{0.4, -0.2}));

  const GatedController fast(main, MakeConstantTrojan(10.0));
  const ControlOutput f = fast.Command({1, 2, 0}, {3, 4});
  EXPECT_EQ(f.multiplier, 10.0);
  EXPECT_DOUBLE_EQ(f.applied.omega_l, 4.0);
  EXPECT_DOUBLE_EQ(f.applied.omega_r, -2.0);
}

// Scaling both wheels by m scales v and w by m and leaves the turning
// radius v / w unchanged.
TEST(ControllerStackTest, GateIsLinearAndPreservesCurvature) {
  const MlpModel main = MakeMainModel(8);
  const RobotGeometry geo;
  std::mt19937_64 gen(2);
  for (double m : {0.25, 2.0, 10.0}) {
    const GatedController gated(main, MakeConstantTrojan(m));
    for (int i = 0; i < 20; ++i) {
      const RobotPose p = RandomPose(gen);
      const ControlOutput o = gated.Command(p, {200, 200});
      EXPECT_EQ(o.applied.omega_l, m * o.commanded.omega_l);
      EXPECT_EQ(o.applied.omega_r, m * o.commanded.omega_r);
      const BodyTwist c = WheelsToTwist(o.commanded, geo);
      const BodyTwist a = WheelsToTwist(o.applied, geo);
      EXPECT_NEAR(a.v, m * c.v, 1e-12 * (1 + std::abs(m * c.v)));
      EXPECT_NEAR(a.w, m * c.w, 1e-12 * (1 + std::abs(m * c.w)));
      if (std::abs(c.w) > 1e-9) {
        EXPECT_NEAR(a.v / a.w, c.v / c.w, 1e-9 * (1 + std::abs(c.v / c.w)));
      }
    }
  }
}

TEST(ControllerStackTest, NegativeMultiplierClamp) {
  const MlpModel main = ConstantMain(1.0, 1.0);
  const GatedController clamped(main, MakeConstantTrojan(-0.2));
  EXPECT_EQ(clamped.InferTrojan({0, 0, 0}, {1, 1}), 0.0);
  EXPECT_EQ(clamped.Command({0, 0, 0}, {1, 1}).applied.omega_l, 0.0);

  const GatedController raw(main, MakeConstantTrojan(-0.2), false);
  EXPECT_EQ(raw.InferTrojan({0, 0, 0}, {1, 1}), -0.2);
  // Large values are never clamped from above.
  const GatedController big(main, MakeConstantTrojan(25.0));
  EXPECT_EQ(big.InferTrojan({0, 0, 0}, {1, 1}), 25.0);
}

TEST(ControllerStackTest, RoleMismatchRejected) {
  EXPECT_THROW(GatedController(MakeTrojanModel(1), MakeTrojanModel(2)),
               ValidationError);
  EXPECT_THROW(GatedController(MakeMainModel(1), MakeMainModel(2)),
               ValidationError);
  EXPECT_THROW(NeuralController(MakeTrojanModel(1)), ValidationError);
  EXPECT_THROW(InferWheelSpeeds(MakeTrojanModel(1), {}, {}), ValidationError);
}

TEST(ControllerStackTest, GeometricMatchesLawAndSaturates) {
  const Gains gains;
  const RobotGeometry geo;
  const GeometricController free(gains, geo);
  const ControlOutput o = free.Command({0, 0, 0}, {100, 30});
  EXPECT_EQ(o.applied, GeometricWheelCommand({0, 0, 0}, {100, 30}, gains, geo));
  EXPECT_EQ(o.multiplier, 1.0);
  const GeometricController capped(gains, geo, 1.0);
  const ControlOutput c = capped.Command({0, 0, 0}, {300, 30});
  EXPECT_LE(std::abs(c.applied.omega_l), 1.0);
  EXPECT_LE(std::abs(c.applied.omega_r), 1.0);
}

TEST(ControllerStackTest, ManifestResolvesRelativePaths) {
  testing::ScratchDir dir;
  const MlpModel main = MakeMainModel(3);
  SaveModel(main, dir / "models/main.json");
  SaveModel(MakeConstantTrojan(0.5), dir / "models/trojan.json");
  SaveGatedManifest({"models/main.json", "models/trojan.json", false},
                    dir / "gated.json");
  const GatedManifest m = LoadGatedManifest(dir / "gated.json");
  EXPECT_EQ(m.main_path, dir / "models/main.json");
  EXPECT_FALSE(m.clamp_m_nonneg);
  const GatedController g = LoadGatedController(m);
  EXPECT_EQ(g.Command({5, 5, 0}, {9, 9}).multiplier, 0.5);

  WriteTextFile(dir / "bad.json", "{\"main\": 3}");
  EXPECT_THROW(LoadGatedManifest(dir / "bad.json"), ValidationError);
  EXPECT_THROW(LoadGatedManifest(dir / "missing.json"), IoError);
}

// The two networks share no parameters: perturbing one leaves the other's
// output unchanged.
TEST(ControllerStackTest, NetworksAreIndependent) {
  MlpModel main = MakeMainModel(4);
  MlpModel trojan = MakeTrojanModel(4);
  const GatedController before(main, trojan);
  trojan.layers[0].weights(0, 0) += 1.0;
  const GatedController after(main, trojan);
  const RobotPose p{120, 80, 0.3};
  const Goal g{300, 50};
  EXPECT_EQ(before.InferMain(p, g), after.InferMain(p, g));
  main.layers[0].weights(0, 0) += 1.0;
  const GatedController after2(main, MakeTrojanModel(4));
  EXPECT_EQ(before.InferTrojan(p, g), after2.InferTrojan(p, g));
}

}  // namespace
}  // namespace trojan_drive
