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

#include "stgeo/raster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stgeo {

void DepthRange::validate() const {
  if (!(std::isfinite(min) && std::isfinite(max) && min > 0.0 && min < max)) {
    throw Error(ErrorCode::kInvalidArgument,
                "depth range must satisfy 0 < min < max, got [" + std::to_string(min) + ", " +
                    std::to_string(max) + "]");
  }
}

DepthFrame::DepthFrame(int width, int height, DepthRange range)
    : range_(range), depth_(width, height, 0.0f), valid_(width, height, 0) {
  range_.validate();
}

std::size_t DepthFrame::valid_count() const {
  const auto v = valid_.data();
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), std::uint8_t{1}));
}

DepthFrame DepthFrame::from_raster(const Raster<float>& depth, DepthRange range) {
  DepthFrame f(depth.width(), depth.height(), range);
  for (std::size_t i = 0; i < depth.size(); ++i) {
    f.set_index(i, depth[i]);
  }
  return f;
}

}  // namespace stgeo
