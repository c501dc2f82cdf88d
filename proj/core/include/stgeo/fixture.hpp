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
//
// Synthetic driving sequence: a straight corridor with textured ground and
// walls, parked boxes, spheres and one moving car, observed by a ring of
// cameras and a spinning LiDAR mounted on an ego vehicle driving along +x.

#ifndef STGEO_FIXTURE_HPP
#define STGEO_FIXTURE_HPP

#include <cstdint>
#include <vector>

#include "stgeo/curation.hpp"
#include "stgeo/nvs.hpp"
#include "stgeo/scene_script.hpp"
#include "stgeo/synth.hpp"

namespace stgeo::fixture {

struct DrivingSpec {
  int frames = 17;
  int cameras = 6;
  int width = 800;
  int height = 424;
  double speed = 1.0;          // meters per frame along world +x
  double lidar_height = 1.84;  // meters above the ground
  int lidar_beams = 32;
  int lidar_azimuths = 1024;
  int mvs_stride = 4;  // one MVS point per stride x stride pixels
  std::uint64_t seed = 0;
  DepthRange range;
};

struct DrivingFixture {
  DrivingSpec spec;
  Intrinsics k;
  std::vector<Pose> camera_to_ego;
  std::size_t static_primitives = 0;
  std::vector<synth::SynthScene> scenes;  // per frame, static part first
  std::vector<FrameInput> inputs;
  std::vector<std::vector<synth::RaycastResult>> views;  // [frame][camera]
  SceneScript script;

  Trajectory trajectory() const;
  SurroundFrame surround(int t) const;
};

/// The static corridor shared by every frame.
synth::SynthScene corridor_scene();

/// Builds the whole sequence; the result is a pure function of `spec`.
DrivingFixture make_driving(const DrivingSpec& spec);

}  // namespace stgeo::fixture

#endif  // STGEO_FIXTURE_HPP
