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

#ifndef STGEO_RENDER_HPP
#define STGEO_RENDER_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "stgeo/geometry.hpp"
#include "stgeo/pointcloud.hpp"
#include "stgeo/raster.hpp"

namespace stgeo {

/// Sparse projected RGB + depth; depth.valid() is the shared valid mask.
struct ConditionFrame {
  RgbImage rgb;
  DepthFrame depth;

  const Mask& valid() const { return depth.valid(); }
  bool operator==(const ConditionFrame&) const = default;
};

/// Two points whose camera z differ by less than this share a z-buffer slot;
/// the lower input index wins.
inline constexpr double kDepthTieTolerance = 1e-9;

/// Nearest-pixel index of a projected coordinate (half-up rounding).
inline int pixel_index(double coord) { return static_cast<int>(std::floor(coord + 0.5)); }

/// Z-buffer splat of a world-frame cloud into `cam`. Every point whose
/// camera z lies in `range` lands on pixel (round(u), round(v)) if that is
/// inside the raster. Each pixel keeps the lowest-index point among those
/// with z < z_min + kDepthTieTolerance, where z_min is the pixel's nearest
/// depth. Footprint is one pixel.
ConditionFrame splat(const PointCloud& cloud, const Pose& cam, const Intrinsics& k,
                     const DepthRange& range = {});

/// Like splat, but also returns, per pixel, the winning point index
/// (-1 where empty).
ConditionFrame splat_indexed(const PointCloud& cloud, const Pose& cam, const Intrinsics& k,
                             const DepthRange& range, std::vector<std::ptrdiff_t>* winners);

/// One world-frame point per valid pixel, in row-major pixel order, with the
/// pixel's color and the rendered source tag. Throws kSizeMismatch when the
/// rasters and intrinsics disagree on size.
PointCloud depth_to_cloud(const RgbImage& rgb, const DepthFrame& depth, const Pose& cam,
                          const Intrinsics& k);

inline constexpr double kDefaultHprGamma = 2.0;

/// Katz-style hidden point removal. Points are taken relative to
/// `viewpoint`, spherically flipped about a sphere of radius
/// R = 10^gamma * max|p|, and the points whose flipped images are corners of
/// the convex hull of the flipped set plus the viewpoint are visible.
/// Returns the visible indices in ascending order.
///
/// Throws kPointAtViewpoint if a point coincides with the viewpoint and
/// kDegenerateCloud if the flipped set plus viewpoint is coplanar (or the
/// cloud is empty). A single point is always visible.
std::vector<std::size_t> hidden_point_removal(const PointCloud& cloud, const Vec3& viewpoint,
                                              double gamma = kDefaultHprGamma);

}  // namespace stgeo

#endif  // STGEO_RENDER_HPP
