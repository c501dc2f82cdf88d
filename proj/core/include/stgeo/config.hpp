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

#ifndef STGEO_CONFIG_HPP
#define STGEO_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stgeo/curation.hpp"
#include "stgeo/metrics.hpp"
#include "stgeo/nvs.hpp"
#include "stgeo/raster.hpp"

namespace stgeo {

/// Every tunable of the pipeline. Serialized as YAML with units in
/// comments; keys missing from a file keep their defaults, unknown keys
/// are rejected.
struct PipelineConfig {
  DepthRange range;
  int lidar_window = kDefaultLidarWindow;
  double voxel_resolution = kDefaultVoxelResolution;
  double hpr_gamma = kDefaultHprGamma;
  int lidar_priority_radius = kDefaultLidarPriorityRadius;
  double box_margin = kDefaultBoxMargin;
  double mvs_min_height = 0.0;
  double sky_depth = kDefaultSkyDepth;
  std::vector<int> offsets{kDefaultOffsets.begin(), kDefaultOffsets.end()};
  std::vector<int> augmentation_offsets{kAugmentationOffsets.begin(), kAugmentationOffsets.end()};
  double tau_min = kDefaultTauMin;
  double tau_max = kDefaultTauMax;
  TauMode tau_mode = TauMode::kPerFrame;
  std::vector<double> eval_shifts{-4.0, -2.0, -1.0, 1.0, 2.0, 4.0};
  EvalRange eval_range;
  std::uint64_t seed = 0;

  /// Throws kInvalidArgument on an inconsistent setting.
  void validate() const;

  CurationConfig curation() const;

  std::string to_yaml() const;
  /// Throws kFormat on malformed YAML or unknown keys.
  static PipelineConfig from_yaml(const std::string& text);
  static PipelineConfig load(const std::filesystem::path& path);

  bool operator==(const PipelineConfig& other) const;
};

}  // namespace stgeo

#endif  // STGEO_CONFIG_HPP
