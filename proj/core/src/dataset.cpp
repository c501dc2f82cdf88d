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

#include "stgeo/dataset.hpp"

#include <cstdio>

#include "stgeo/error.hpp"
#include "stgeo/io.hpp"
#include "stgeo/oracle.hpp"

namespace stgeo::io {

namespace {
constexpr std::string_view kCameraToEgo = "camera_to_ego";
}  // namespace

std::string frame_dir_name(int t) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%03d", t);
  return buf;
}

std::string camera_dir_name(std::size_t c) { return "cam" + std::to_string(c); }

fs::path camera_dir(const fs::path& root, int t, std::size_t c) {
  return root / "frames" / frame_dir_name(t) / camera_dir_name(c);
}

nlohmann::json trajectory_to_json(const Trajectory& trajectory) {
  nlohmann::json poses = nlohmann::json::array();
  for (const Pose& p : trajectory.egos) poses.push_back(to_json(p, kEgoConvention)["matrix"]);
  return {{"convention", kEgoConvention}, {"poses", poses}};
}

Trajectory trajectory_from_json(const nlohmann::json& j) {
  Trajectory traj;
  try {
    const auto convention = j.at("convention").get<std::string>();
    for (const auto& m : j.at("poses")) {
      traj.egos.push_back(transform_from_json({{"convention", convention}, {"matrix", m}},
                                              kEgoConvention));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("trajectory: ") + e.what());
  }
  return traj;
}

SurroundFrame Dataset::surround(int t) const {
  const auto ti = static_cast<std::size_t>(t);
  if (ti >= depth.size() || depth[ti].size() != cameras()) {
    throw Error(ErrorCode::kIo, "depth maps of frame " + std::to_string(t) + " are missing");
  }
  SurroundFrame frame;
  for (std::size_t c = 0; c < cameras(); ++c) {
    const CameraInput& cam = inputs[ti].cameras[c];
    frame.push_back({cam.rgb, depth[ti][c], cam.pose, k});
  }
  return frame;
}

const synth::SynthScene& Dataset::scene(int t) const {
  const auto ti = static_cast<std::size_t>(t);
  if (ti >= scenes.size() || !scenes[ti]) {
    throw Error(ErrorCode::kInvalidArgument, "frame " + std::to_string(t) + " has no analytic scene");
  }
  return *scenes[ti];
}

void write_dataset(const fs::path& root, const fixture::DrivingFixture& fx) {
  nlohmann::json extrinsics = nlohmann::json::array();
  for (const Pose& p : fx.camera_to_ego) extrinsics.push_back(to_json(p, kCameraToEgo));
  write_json(root / "rig.json", {{"intrinsics", to_json(fx.k)},
                                 {"camera_to_ego", extrinsics},
                                 {"depth_range", {fx.spec.range.min, fx.spec.range.max}}});
  write_json(root / "script.json", to_json(fx.script));
  write_json(root / "trajectory.json", trajectory_to_json(fx.trajectory()));
  for (std::size_t t = 0; t < fx.inputs.size(); ++t) {
    const FrameInput& in = fx.inputs[t];
    const fs::path frame = root / "frames" / frame_dir_name(static_cast<int>(t));
    write_ply(frame / "lidar.ply", in.lidar);
    write_ply(frame / "mvs.ply", in.mvs);
    write_json(frame / "scene.json", to_json(fx.scenes[t]));
    for (std::size_t c = 0; c < in.cameras.size(); ++c) {
      const fs::path dir = camera_dir(root, static_cast<int>(t), c);
      const CameraInput& cam = in.cameras[c];
      write_png_rgb(dir / "rgb.png", cam.rgb);
      write_mask_png(dir / "sky.png", cam.sky);
      write_mask_png(dir / "exclusion.png", cam.exclusion);
      write_pfm(dir / "depth.pfm", fx.views[t][c].depth);
      write_pfm(dir / "golden.pfm",
                oracle_curated_depth(fx.scenes[t], cam.pose, fx.k, fx.spec.range));
    }
  }
}

Dataset read_dataset(const fs::path& root, bool with_depth) {
  Dataset ds;
  const nlohmann::json rig = read_json(root / "rig.json");
  DepthRange range;
  try {
    ds.k = intrinsics_from_json(rig.at("intrinsics"));
    for (const auto& p : rig.at("camera_to_ego")) {
      ds.camera_to_ego.push_back(transform_from_json(p, kCameraToEgo));
    }
    if (rig.contains("depth_range")) {
      range = {rig["depth_range"].at(0).get<double>(), rig["depth_range"].at(1).get<double>()};
      range.validate();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("rig.json: ") + e.what());
  }
  ds.script = scene_script_from_json(read_json(root / "script.json"));

  for (const ScriptFrame& sf : ds.script.frames) {
    const fs::path frame = root / "frames" / frame_dir_name(sf.index);
    if (sf.cameras.size() != ds.cameras()) {
      throw Error(ErrorCode::kFormat, "script camera count disagrees with rig.json");
    }
    FrameInput in;
    in.ego = sf.ego;
    in.boxes = sf.boxes;
    in.lidar = read_ply(frame / "lidar.ply");
    in.mvs = read_ply(frame / "mvs.ply");
    std::vector<DepthFrame> depths;
    for (std::size_t c = 0; c < ds.cameras(); ++c) {
      const fs::path dir = camera_dir(root, sf.index, c);
      CameraInput cam;
      cam.pose = sf.cameras[c];
      cam.k = ds.k;
      cam.rgb = read_png_rgb(dir / "rgb.png");
      if (fs::exists(dir / "sky.png")) cam.sky = read_mask_png(dir / "sky.png");
      if (fs::exists(dir / "exclusion.png")) cam.exclusion = read_mask_png(dir / "exclusion.png");
      if (with_depth && fs::exists(dir / "depth.pfm")) {
        depths.push_back(read_pfm(dir / "depth.pfm", range));
      }
      in.cameras.push_back(std::move(cam));
    }
    ds.inputs.push_back(std::move(in));
    ds.depth.push_back(std::move(depths));
    if (fs::exists(frame / "scene.json")) {
      ds.scenes.emplace_back(synth_scene_from_json(read_json(frame / "scene.json")));
    } else {
      ds.scenes.emplace_back(std::nullopt);
    }
  }
  return ds;
}

}  // namespace stgeo::io
