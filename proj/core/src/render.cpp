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

#include "stgeo/render.hpp"

#include <cmath>
#include <limits>

#include "stgeo/error.hpp"
#include "stgeo/hull.hpp"

namespace stgeo {

ConditionFrame splat_indexed(const PointCloud& cloud, const Pose& cam, const Intrinsics& k,
                             const DepthRange& range, std::vector<std::ptrdiff_t>* winners) {
  k.validate();
  range.validate();
  ConditionFrame out{RgbImage(k.width, k.height), DepthFrame(k.width, k.height, range)};
  const std::size_t pixels = out.rgb.size();

  const Mat3 rt = cam.rotation().transpose();
  const Vec3 origin = cam.translation();
  const std::size_t n = cloud.size();
  constexpr std::size_t kNoPixel = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> pixel_of(n, kNoPixel);
  std::vector<double> z_of(n, 0.0);
  std::vector<double> z_min(pixels, std::numeric_limits<double>::infinity());

  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 q = rt * (cloud.position(i) - origin);
    const double z = q.z();
    if (!range.contains(z) || !range.contains(static_cast<float>(z))) continue;
    const int x = pixel_index(k.fx * q.x() / z + k.cx);
    const int y = pixel_index(k.fy * q.y() / z + k.cy);
    if (!out.rgb.contains(x, y)) continue;
    const std::size_t pix = out.rgb.index(x, y);
    pixel_of[i] = pix;
    z_of[i] = z;
    if (z < z_min[pix]) z_min[pix] = z;
  }

  std::vector<std::ptrdiff_t> winner(pixels, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pix = pixel_of[i];
    if (pix == kNoPixel || winner[pix] >= 0) continue;
    if (z_of[i] < z_min[pix] + kDepthTieTolerance) {
      winner[pix] = static_cast<std::ptrdiff_t>(i);
      out.depth.set_index(pix, static_cast<float>(z_of[i]));
      out.rgb[pix] = cloud.color(i);
    }
  }
  if (winners != nullptr) *winners = std::move(winner);
  return out;
}

ConditionFrame splat(const PointCloud& cloud, const Pose& cam, const Intrinsics& k,
                     const DepthRange& range) {
  return splat_indexed(cloud, cam, k, range, nullptr);
}

PointCloud depth_to_cloud(const RgbImage& rgb, const DepthFrame& depth, const Pose& cam,
                          const Intrinsics& k) {
  if (rgb.width() != depth.width() || rgb.height() != depth.height()) {
    throw Error(ErrorCode::kSizeMismatch, "rgb and depth rasters differ in size");
  }
  if (k.width != depth.width() || k.height != depth.height()) {
    throw Error(ErrorCode::kSizeMismatch, "intrinsics raster size differs from depth frame");
  }
  k.validate();
  PointCloud cloud(true, false);
  cloud.reserve(depth.valid_count());
  for (int y = 0; y < depth.height(); ++y) {
    for (int x = 0; x < depth.width(); ++x) {
      if (!depth.valid(x, y)) continue;
      const Vec3 q = unproject(x, y, depth.depth(x, y), k);
      cloud.add(cam.apply(q), Source::kRendered, rgb(x, y));
    }
  }
  return cloud;
}

std::vector<std::size_t> hidden_point_removal(const PointCloud& cloud, const Vec3& viewpoint,
                                              double gamma) {
  const std::size_t n = cloud.size();
  if (n == 0) throw Error(ErrorCode::kDegenerateCloud, "hidden point removal on an empty cloud");
  if (!std::isfinite(gamma)) throw Error(ErrorCode::kInvalidArgument, "gamma must be finite");

  std::vector<Vec3> rel(n);
  std::vector<double> norm(n);
  double max_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rel[i] = cloud.position(i) - viewpoint;
    norm[i] = rel[i].norm();
    if (norm[i] == 0.0) {
      throw Error(ErrorCode::kPointAtViewpoint, "point " + std::to_string(i) + " at viewpoint");
    }
    max_norm = std::max(max_norm, norm[i]);
  }
  if (n == 1) return {0};

  const double radius = std::pow(10.0, gamma) * max_norm;
  std::vector<Vec3> flipped(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    flipped[i] = rel[i] + 2.0 * (radius - norm[i]) * (rel[i] / norm[i]);
  }
  flipped[n] = Vec3::Zero();

  const ConvexHull hull = convex_hull(flipped);
  std::vector<std::size_t> visible;
  for (std::size_t i = 0; i < n; ++i) {
    if (hull.is_vertex[i]) visible.push_back(i);
  }
  return visible;
}

}  // namespace stgeo
