// Copyright 2026 The stgeo Authors.
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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stgeo/oracle.hpp"

namespace stgeo {
namespace {

synth::SynthScene half_scene() {
  // A plane covering the left half of the view; the right half is sky.
  synth::SynthScene s;
  s.primitives.push_back({synth::Plane{{-5, 0, 10}, {0, 0, -1}, {1, 0, 0}, 5.0, 50.0},
                          synth::ColorFn::constant({10, 20, 30})});
  return s;
}

const Intrinsics kCam{40, 40, 20.5, 15, 40, 30};

TEST(OracleDepth, ValidEverywhereWithMissesAtMax) {
  const DepthFrame d = oracle_depth(half_scene(), Pose::identity(), kCam, {0.1, 80.0});
  EXPECT_EQ(d.valid_count(), d.size());
  EXPECT_NEAR(d.depth(0, 10), 10.0f, 1e-5);
  EXPECT_EQ(d.depth(39, 10), 80.0f);
  const DepthFrame sky = oracle_curated_depth(half_scene(), Pose::identity(), kCam, {0.1, 80.0}, 60.0);
  EXPECT_EQ(sky.depth(39, 10), 60.0f);
  EXPECT_NEAR(sky.depth(0, 10), 10.0f, 1e-5);
}

TEST(RaycastBackend, AnswersWithTheSceneOfTheRequestedFrame) {
  const std::vector<synth::SynthScene> scenes = {half_scene(), synth::SynthScene{}};
  const RaycastBackend backend([&](int t) -> const synth::SynthScene& { return scenes[t]; });
  const DepthPrompt prompt{DepthFrame(kCam.width, kCam.height),
                           Raster<PromptSource>(kCam.width, kCam.height), RgbImage()};
  const DepthFrame init(kCam.width, kCam.height);
  const RgbImage rgb(kCam.width, kCam.height);
  const Pose cam;
  const DepthFrame a = backend.complete({rgb, prompt, init, cam, kCam, 0, 0});
  const DepthFrame b = backend.complete({rgb, prompt, init, cam, kCam, 1, 0});
  EXPECT_EQ(a, oracle_depth(scenes[0], cam, kCam));
  EXPECT_EQ(b.depth(0, 0), 100.0f);
}

TEST(RaycastViewDensifier, ReturnsAnalyticRgbd) {
  const RaycastViewDensifier d(half_scene());
  const ConditionFrame cond{RgbImage(kCam.width, kCam.height), DepthFrame(kCam.width, kCam.height)};
  const Pose cam;
  const DenseView v = d.complete({cond, cam, kCam});
  EXPECT_EQ(v.rgb(0, 0), (Rgb{10, 20, 30}));
  EXPECT_EQ(v.rgb(39, 0), synth::kSkyColor);
  EXPECT_EQ(v.depth.valid_count(), v.depth.size());
}

}  // namespace
}  // namespace stgeo
