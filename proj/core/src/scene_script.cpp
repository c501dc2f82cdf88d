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

#include "stgeo/scene_script.hpp"

#include "stgeo/error.hpp"

namespace stgeo {

void SceneScript::validate() const {
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const ScriptFrame& f = frames[t];
    if (f.index != static_cast<int>(t)) {
      throw Error(ErrorCode::kInvalidArgument, "frame indices must be contiguous from 0");
    }
    const LayoutMap& m = f.map;
    if (m.width < 0 || m.height < 0 || m.layers < 0 ||
        m.bits.size() != static_cast<std::size_t>(m.width) * m.height * m.layers) {
      throw Error(ErrorCode::kInvalidArgument, "map raster size mismatch");
    }
    for (const std::uint8_t b : m.bits) {
      if (b > 1) throw Error(ErrorCode::kInvalidArgument, "map layers must be binary");
    }
  }
}

}  // namespace stgeo
