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

#include "stgeo/config.hpp"
#include "stgeo/error.hpp"

namespace stgeo {
namespace {

TEST(Config, DefaultsMatchThePipelineConstants) {
  const PipelineConfig c;
  EXPECT_EQ(c.range, (DepthRange{0.1, 100.0}));
  EXPECT_EQ(c.lidar_window, 3);
  EXPECT_EQ(c.voxel_resolution, 0.1);
  EXPECT_EQ(c.hpr_gamma, 2.0);
  EXPECT_EQ(c.lidar_priority_radius, 2);
  EXPECT_EQ(c.offsets, (std::vector<int>{-2, 2}));
  EXPECT_EQ(c.augmentation_offsets, (std::vector<int>{-4, 4}));
  EXPECT_EQ(c.tau_min, -3.0);
  EXPECT_EQ(c.tau_max, 3.0);
  EXPECT_EQ(c.eval_shifts, (std::vector<double>{-4, -2, -1, 1, 2, 4}));
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, YamlRoundTrip) {
  PipelineConfig c;
  EXPECT_EQ(PipelineConfig::from_yaml(c.to_yaml()), c);
  c.voxel_resolution = 0.05;
  c.tau_mode = TauMode::kPerTrajectory;
  c.seed = 1234567890123ULL;
  c.eval_shifts = {0.3};
  c.range = {0.5, 120.0};
  const PipelineConfig back = PipelineConfig::from_yaml(c.to_yaml());
  EXPECT_EQ(back, c);
  EXPECT_EQ(back.to_yaml(), c.to_yaml());
}

TEST(Config, PartialFilesKeepDefaults) {
  const PipelineConfig c = PipelineConfig::from_yaml("curation:\n  hpr_gamma: 3.5\nseed: 9\n");
  EXPECT_EQ(c.hpr_gamma, 3.5);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.voxel_resolution, 0.1);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(PipelineConfig::from_yaml("curation:\n  hpr_gama: 3\n"), Error);
  EXPECT_THROW(PipelineConfig::from_yaml("bogus: 1\n"), Error);
  EXPECT_THROW(PipelineConfig::from_yaml("seed: [1, 2\n"), Error);
  EXPECT_THROW(PipelineConfig::from_yaml("trajectory:\n  tau_mode: sometimes\n"), Error);
  PipelineConfig c;
  c.lidar_window = 4;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.tau_min = 5;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.sky_depth = 500;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Config, CurationView) {
  PipelineConfig c;
  c.box_margin = 0.3;
  c.sky_depth = 90;
  const CurationConfig cc = c.curation();
  EXPECT_EQ(cc.box_margin, 0.3);
  EXPECT_EQ(cc.sky_depth, 90);
  EXPECT_EQ(cc.range, c.range);
}

}  // namespace
}  // namespace stgeo
