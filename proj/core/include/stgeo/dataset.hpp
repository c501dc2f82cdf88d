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
// On-disk sequence layout:
//
//   rig.json                  intrinsics, camera_to_ego extrinsics
//   script.json               per-frame control signals (map, boxes, ego, cameras)
//   trajectory.json           ego poses
//   frames/NNN/lidar.ply      LiDAR sweep, ego frame
//   frames/NNN/mvs.ply        MVS points, world frame
//   frames/NNN/scene.json     analytic scene (synthetic sequences only)
//   frames/NNN/camC/rgb.png, sky.png, exclusion.png
//   frames/NNN/camC/depth.pfm dense depth (ray-cast truth for synthetic data)

#ifndef STGEO_DATASET_HPP
#define STGEO_DATASET_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stgeo/curation.hpp"
#include "stgeo/fixture.hpp"
#include "stgeo/io.hpp"
#include "stgeo/nvs.hpp"
#include "stgeo/scene_script.hpp"
#include "stgeo/synth.hpp"

namespace stgeo::io {

inline constexpr std::string_view kEgoConvention = "ego_to_world";

std::string frame_dir_name(int t);
std::string camera_dir_name(std::size_t c);
fs::path camera_dir(const fs::path& root, int t, std::size_t c);

nlohmann::json trajectory_to_json(const Trajectory& trajectory);
Trajectory trajectory_from_json(const nlohmann::json& j);

struct Dataset {
  Intrinsics k;
  std::vector<Pose> camera_to_ego;
  SceneScript script;
  std::vector<FrameInput> inputs;
  std::vector<std::optional<synth::SynthScene>> scenes;
  std::vector<std::vector<DepthFrame>> depth;  // [frame][camera], empty when absent

  int frames() const { return static_cast<int>(inputs.size()); }
  std::size_t cameras() const { return camera_to_ego.size(); }
  /// Dense RGB-D views of frame t; throws kIo if depth maps are missing.
  SurroundFrame surround(int t) const;
  /// The analytic scene of frame t; throws kInvalidArgument if absent.
  const synth::SynthScene& scene(int t) const;
};

/// Writes the fixture plus, per camera, golden.pfm: the analytic depth with
/// the sky override, i.e. what curation must return under the ray-cast
/// backend.
void write_dataset(const fs::path& root, const fixture::DrivingFixture& fixture);

/// Loads a sequence. `with_depth` also reads the per-camera depth maps.
Dataset read_dataset(const fs::path& root, bool with_depth = true);

}  // namespace stgeo::io

#endif  // STGEO_DATASET_HPP
