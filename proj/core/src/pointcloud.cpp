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

#include "stgeo/pointcloud.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "stgeo/error.hpp"

namespace stgeo {

void PointCloud::reserve(std::size_t n) {
  positions_.reserve(n);
  sources_.reserve(n);
  if (has_colors_) colors_.reserve(n);
  if (has_labels_) labels_.reserve(n);
}

void PointCloud::add(const Vec3& p, Source source, Rgb color, std::uint8_t label) {
  if (!p.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "point positions must be finite");
  }
  positions_.push_back(p);
  sources_.push_back(source);
  if (has_colors_) colors_.push_back(color);
  if (has_labels_) labels_.push_back(label);
}

PointCloud PointCloud::subset(std::span<const std::size_t> indices) const {
  PointCloud out(has_colors_, has_labels_);
  out.reserve(indices.size());
  for (const std::size_t i : indices) {
    out.positions_.push_back(positions_[i]);
    out.sources_.push_back(sources_[i]);
    if (has_colors_) out.colors_.push_back(colors_[i]);
    if (has_labels_) out.labels_.push_back(labels_[i]);
  }
  return out;
}

void PointCloud::append(const PointCloud& other) {
  const std::size_t n = size();
  if (other.has_colors_ && !has_colors_) {
    colors_.assign(n, Rgb{});
    has_colors_ = true;
  }
  if (other.has_labels_ && !has_labels_) {
    labels_.assign(n, 0);
    has_labels_ = true;
  }
  positions_.insert(positions_.end(), other.positions_.begin(), other.positions_.end());
  sources_.insert(sources_.end(), other.sources_.begin(), other.sources_.end());
  if (has_colors_) {
    for (std::size_t i = 0; i < other.size(); ++i) colors_.push_back(other.color(i));
  }
  if (has_labels_) {
    for (std::size_t i = 0; i < other.size(); ++i) labels_.push_back(other.label(i));
  }
}

// ---------------------------------------------------------------------------
// BBox3D

namespace {

constexpr double kBoxShapeTolerance = 1e-6;
constexpr double kMinEdgeLength = 1e-6;

}  // namespace

BBox3D::BBox3D(const std::array<Vec3, 8>& corners, int class_id)
    : corners_(corners), class_id_(class_id) {
  for (const Vec3& c : corners_) {
    if (!c.allFinite()) throw Error(ErrorCode::kInvalidArgument, "box corner not finite");
  }
  const Vec3 e1 = corners_[1] - corners_[0];
  const Vec3 e2 = corners_[2] - corners_[0];
  const Vec3 e3 = corners_[4] - corners_[0];
  for (int i = 0; i < 8; ++i) {
    const Vec3 expected = corners_[0] + ((i & 1) ? e1 : Vec3::Zero()) +
                          ((i & 2) ? e2 : Vec3::Zero()) + ((i & 4) ? e3 : Vec3::Zero());
    if ((corners_[i] - expected).norm() > kBoxShapeTolerance) {
      throw Error(ErrorCode::kInvalidArgument,
                  "box corners do not form a parallelepiped (corner " + std::to_string(i) + ")");
    }
  }
}

BBox3D BBox3D::from_center(const Vec3& center, const Vec3& size, double yaw, int class_id) {
  const Mat3 r = rotation_z(yaw);
  std::array<Vec3, 8> corners;
  for (int i = 0; i < 8; ++i) {
    const Vec3 local((i & 1) ? 0.5 : -0.5, (i & 2) ? 0.5 : -0.5, (i & 4) ? 0.5 : -0.5);
    corners[i] = center + r * local.cwiseProduct(size);
  }
  return BBox3D(corners, class_id);
}

Vec3 BBox3D::center() const {
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : corners_) c += p;
  return c / 8.0;
}

Vec3 BBox3D::edge(int axis) const {
  static constexpr int kCorner[3] = {1, 2, 4};
  return corners_[kCorner[axis]] - corners_[0];
}

bool BBox3D::contains(const Vec3& p, double margin) const {
  const Vec3 d = p - center();
  for (int axis = 0; axis < 3; ++axis) {
    const Vec3 e = edge(axis);
    const double len = e.norm();
    if (len < kMinEdgeLength) {
      throw Error(ErrorCode::kDegenerateBox, "box edge shorter than 1e-6 m");
    }
    if (std::abs(d.dot(e) / len) > 0.5 * len + margin) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Cloud operations

PointCloud transform(const PointCloud& cloud, const RelativeTransform& xf) {
  PointCloud out = cloud;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.set_position(i, xf.apply(cloud.position(i)));
  }
  return out;
}

PointCloud remove_dynamic(const PointCloud& cloud, std::span<const BBox3D> boxes, double margin) {
  if (boxes.empty()) return cloud;
  for (const BBox3D& box : boxes) {
    for (int axis = 0; axis < 3; ++axis) {
      if (box.edge(axis).norm() < kMinEdgeLength) {
        throw Error(ErrorCode::kDegenerateBox, "box edge shorter than 1e-6 m");
      }
    }
  }
  std::vector<std::size_t> keep;
  keep.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3& p = cloud.position(i);
    const bool inside = std::any_of(boxes.begin(), boxes.end(),
                                    [&](const BBox3D& b) { return b.contains(p, margin); });
    if (!inside) keep.push_back(i);
  }
  return cloud.subset(keep);
}

PointCloud filter_above_height(const PointCloud& cloud, double z_min) {
  const auto sources = cloud.sources();
  if (std::find(sources.begin(), sources.end(), Source::kLidar) != sources.end()) {
    throw Error(ErrorCode::kFilterOnWrongSource,
                "height filtering applies to MVS clouds, got lidar-tagged points");
  }
  std::vector<std::size_t> keep;
  keep.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (cloud.position(i).z() >= z_min) keep.push_back(i);
  }
  return cloud.subset(keep);
}

namespace {

struct VoxelKey {
  std::int64_t x, y, z;
  auto operator<=>(const VoxelKey&) const = default;
};

VoxelKey voxel_of(const Vec3& p, double resolution) {
  return {static_cast<std::int64_t>(std::floor(p.x() / resolution)),
          static_cast<std::int64_t>(std::floor(p.y() / resolution)),
          static_cast<std::int64_t>(std::floor(p.z() / resolution))};
}

}  // namespace

PointCloud voxel_downsample(const PointCloud& cloud, double resolution) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw Error(ErrorCode::kNonPositiveResolution, "voxel resolution must be > 0");
  }
  const std::size_t n = cloud.size();
  std::vector<VoxelKey> keys(n);
  for (std::size_t i = 0; i < n; ++i) keys[i] = voxel_of(cloud.position(i), resolution);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return keys[a] != keys[b] ? keys[a] < keys[b] : a < b;
  });

  PointCloud out(cloud.has_colors(), cloud.has_labels());
  std::size_t begin = 0;
  while (begin < n) {
    std::size_t end = begin + 1;
    while (end < n && keys[order[end]] == keys[order[begin]]) ++end;

    // Members are visited in ascending input index, so the sum is
    // reproducible regardless of how the input was produced.
    Vec3 sum = Vec3::Zero();
    Vec3 lo = cloud.position(order[begin]);
    Vec3 hi = lo;
    for (std::size_t k = begin; k < end; ++k) {
      const Vec3& p = cloud.position(order[k]);
      sum += p;
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    // Rounding can push the mean a hair outside the members' bounds.
    const Vec3 centroid = (sum / static_cast<double>(end - begin)).cwiseMax(lo).cwiseMin(hi);

    std::size_t best = order[begin];
    double best_d2 = (cloud.position(best) - centroid).squaredNorm();
    for (std::size_t k = begin + 1; k < end; ++k) {
      const double d2 = (cloud.position(order[k]) - centroid).squaredNorm();
      if (d2 < best_d2) {
        best_d2 = d2;
        best = order[k];
      }
    }
    out.add(centroid, cloud.source(best), cloud.color(best), cloud.label(best));
    begin = end;
  }
  return out;
}

PointCloud aggregate_frames(std::span<const PointCloud> clouds,
                            std::span<const RelativeTransform> egos, int center, int window) {
  if (window <= 0 || clouds.empty()) {
    throw Error(ErrorCode::kEmptyWindow, "aggregation window is empty");
  }
  if (window % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument, "aggregation window must be odd");
  }
  if (clouds.size() != egos.size()) {
    throw Error(ErrorCode::kSizeMismatch, "one ego transform per cloud required");
  }
  const int frames = static_cast<int>(clouds.size());
  if (center < 0 || center >= frames) {
    throw Error(ErrorCode::kOffsetOutOfRange, "aggregation center outside the sequence");
  }
  const int half = window / 2;
  const int first = std::max(0, center - half);
  const int last = std::min(frames - 1, center + half);

  const RelativeTransform world_to_center = egos[center].inverse();
  PointCloud out(clouds[first].has_colors(), clouds[first].has_labels());
  for (int t = first; t <= last; ++t) {
    if (t == center) {
      out.append(clouds[t]);
    } else {
      out.append(transform(clouds[t], world_to_center * egos[t]));
    }
  }
  return out;
}

}  // namespace stgeo
