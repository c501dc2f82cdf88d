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

#ifndef STGEO_SCENE_SCRIPT_HPP
#define STGEO_SCENE_SCRIPT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "stgeo/geometry.hpp"
#include "stgeo/pointcloud.hpp"

namespace stgeo {

/// w x h x s binary road-layout raster, one layer per semantic class.
/// Carried through ingestion and serialization only.
struct LayoutMap {
  int width = 0;
  int height = 0;
  int layers = 0;
  std::vector<std::uint8_t> bits;  // layer-major, then row-major

  std::uint8_t at(int layer, int x, int y) const {
    return bits[(static_cast<std::size_t>(layer) * height + y) * width + x];
  }
  bool operator==(const LayoutMap&) const = default;
};

/// Per-frame control signals: layout map, boxes, ego transform to frame 0
/// and per-camera camera-to-world poses.
struct ScriptFrame {
  int index = 0;
  LayoutMap map;
  std::vector<BBox3D> boxes;
  RelativeTransform ego;
  std::vector<Pose> cameras;
};

struct SceneScript {
  std::vector<ScriptFrame> frames;

  /// Throws kInvalidArgument on non-contiguous indices or non-binary maps.
  void validate() const;
};

}  // namespace stgeo

#endif  // STGEO_SCENE_SCRIPT_HPP
