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

#include "stgeo/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "stgeo/error.hpp"
#include "stgeo/io.hpp"

namespace stgeo {

void PipelineConfig::validate() const {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "config: " + what);
  };
  range.validate();
  if (lidar_window <= 0 || lidar_window % 2 == 0) fail("lidar window must be a positive odd count");
  if (!(voxel_resolution > 0.0) || !std::isfinite(voxel_resolution)) {
    fail("voxel resolution must be positive");
  }
  if (!std::isfinite(hpr_gamma) || hpr_gamma < 0.0) fail("hpr gamma must be finite and >= 0");
  if (lidar_priority_radius < 0) fail("lidar priority radius must be >= 0");
  if (!(box_margin >= 0.0) || !std::isfinite(box_margin)) fail("box margin must be >= 0");
  if (!std::isfinite(mvs_min_height)) fail("mvs minimum height must be finite");
  if (!range.contains(sky_depth)) fail("sky depth must lie inside the depth range");
  if (!std::isfinite(tau_min) || !std::isfinite(tau_max) || tau_min > tau_max) {
    fail("tau range must be finite with min <= max");
  }
  for (const double s : eval_shifts) {
    if (!std::isfinite(s)) fail("evaluation shifts must be finite");
  }
  if (!(eval_range.min >= 0.0) || !(eval_range.max > eval_range.min) ||
      !std::isfinite(eval_range.max)) {
    fail("evaluation range must satisfy 0 <= min < max");
  }
}

CurationConfig PipelineConfig::curation() const {
  CurationConfig c;
  c.range = range;
  c.lidar_window = lidar_window;
  c.voxel_resolution = voxel_resolution;
  c.hpr_gamma = hpr_gamma;
  c.lidar_priority_radius = lidar_priority_radius;
  c.box_margin = box_margin;
  c.mvs_min_height = mvs_min_height;
  c.sky_depth = sky_depth;
  return c;
}

bool PipelineConfig::operator==(const PipelineConfig& o) const {
  return range == o.range && lidar_window == o.lidar_window &&
         voxel_resolution == o.voxel_resolution && hpr_gamma == o.hpr_gamma &&
         lidar_priority_radius == o.lidar_priority_radius && box_margin == o.box_margin &&
         mvs_min_height == o.mvs_min_height && sky_depth == o.sky_depth && offsets == o.offsets &&
         augmentation_offsets == o.augmentation_offsets && tau_min == o.tau_min &&
         tau_max == o.tau_max && tau_mode == o.tau_mode && eval_shifts == o.eval_shifts &&
         eval_range.min == o.eval_range.min && eval_range.max == o.eval_range.max &&
         seed == o.seed;
}

namespace {

// Shortest decimal that parses back to the same double.
std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

template <typename T>
std::string list(const std::vector<T>& values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ", ";
    if constexpr (std::is_floating_point_v<T>) s += num(values[i]);
    else s += std::to_string(values[i]);
  }
  return s + "]";
}

void reject_unknown(const YAML::Node& node, const std::string& where,
                    std::initializer_list<const char*> known) {
  if (!node.IsMap()) throw Error(ErrorCode::kFormat, "config: '" + where + "' must be a mapping");
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      throw Error(ErrorCode::kFormat, "config: unknown key '" + where + key + "'");
    }
  }
}

template <typename T>
void read(const YAML::Node& node, const char* key, T& out) {
  if (node[key]) out = node[key].as<T>();
}

}  // namespace

std::string PipelineConfig::to_yaml() const {
  std::ostringstream os;
  os << "# stgeo pipeline configuration\n"
     << "depth:\n"
     << "  min_m: " << num(range.min) << "  # meters, smallest valid depth\n"
     << "  max_m: " << num(range.max) << "  # meters, largest valid depth\n"
     << "curation:\n"
     << "  lidar_window_frames: " << lidar_window << "  # frames, odd\n"
     << "  voxel_resolution_m: " << num(voxel_resolution) << "  # meters\n"
     << "  hpr_gamma: " << num(hpr_gamma) << "  # R = 10^gamma * max distance\n"
     << "  lidar_priority_radius_px: " << lidar_priority_radius << "  # pixels, Chebyshev\n"
     << "  box_margin_m: " << num(box_margin) << "  # meters added to each box half extent\n"
     << "  mvs_min_height_m: " << num(mvs_min_height) << "  # meters above the LiDAR, ego z\n"
     << "  sky_depth_m: " << num(sky_depth) << "  # meters\n"
     << "conditions:\n"
     << "  offsets_frames: " << list(offsets) << "  # frames\n"
     << "  augmentation_offsets_frames: " << list(augmentation_offsets) << "  # frames\n"
     << "trajectory:\n"
     << "  tau_min_m: " << num(tau_min) << "  # meters along ego +y\n"
     << "  tau_max_m: " << num(tau_max) << "  # meters along ego +y\n"
     << "  tau_mode: " << (tau_mode == TauMode::kPerFrame ? "per_frame" : "per_trajectory")
     << "  # per_frame | per_trajectory\n"
     << "evaluation:\n"
     << "  shifts_m: " << list(eval_shifts) << "  # meters, lateral\n"
     << "  min_m: " << num(eval_range.min) << "  # meters, exclusive\n"
     << "  max_m: " << num(eval_range.max) << "  # meters, inclusive\n"
     << "seed: " << seed << "  # root of every random stream\n";
  return os.str();
}

PipelineConfig PipelineConfig::from_yaml(const std::string& text) {
  PipelineConfig c;
  try {
    const YAML::Node root = YAML::Load(text);
    if (root.IsNull()) return c;
    reject_unknown(root, "", {"depth", "curation", "conditions", "trajectory", "evaluation", "seed"});
    if (const auto n = root["depth"]) {
      reject_unknown(n, "depth.", {"min_m", "max_m"});
      read(n, "min_m", c.range.min);
      read(n, "max_m", c.range.max);
    }
    if (const auto n = root["curation"]) {
      reject_unknown(n, "curation.",
                     {"lidar_window_frames", "voxel_resolution_m", "hpr_gamma",
                      "lidar_priority_radius_px", "box_margin_m", "mvs_min_height_m",
                      "sky_depth_m"});
      read(n, "lidar_window_frames", c.lidar_window);
      read(n, "voxel_resolution_m", c.voxel_resolution);
      read(n, "hpr_gamma", c.hpr_gamma);
      read(n, "lidar_priority_radius_px", c.lidar_priority_radius);
      read(n, "box_margin_m", c.box_margin);
      read(n, "mvs_min_height_m", c.mvs_min_height);
      read(n, "sky_depth_m", c.sky_depth);
    }
    if (const auto n = root["conditions"]) {
      reject_unknown(n, "conditions.", {"offsets_frames", "augmentation_offsets_frames"});
      read(n, "offsets_frames", c.offsets);
      read(n, "augmentation_offsets_frames", c.augmentation_offsets);
    }
    if (const auto n = root["trajectory"]) {
      reject_unknown(n, "trajectory.", {"tau_min_m", "tau_max_m", "tau_mode"});
      read(n, "tau_min_m", c.tau_min);
      read(n, "tau_max_m", c.tau_max);
      if (n["tau_mode"]) {
        const auto mode = n["tau_mode"].as<std::string>();
        if (mode == "per_frame") c.tau_mode = TauMode::kPerFrame;
        else if (mode == "per_trajectory") c.tau_mode = TauMode::kPerTrajectory;
        else throw Error(ErrorCode::kFormat, "config: unknown tau_mode '" + mode + "'");
      }
    }
    if (const auto n = root["evaluation"]) {
      reject_unknown(n, "evaluation.", {"shifts_m", "min_m", "max_m"});
      read(n, "shifts_m", c.eval_shifts);
      read(n, "min_m", c.eval_range.min);
      read(n, "max_m", c.eval_range.max);
    }
    read(root, "seed", c.seed);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kFormat, std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  return from_yaml(io::read_file(path));
}

}  // namespace stgeo
