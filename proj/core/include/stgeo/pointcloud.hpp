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

#ifndef STGEO_POINTCLOUD_HPP
#define STGEO_POINTCLOUD_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "stgeo/geometry.hpp"
#include "stgeo/raster.hpp"

namespace stgeo {

enum class Source : std::uint8_t { kLidar = 0, kMvs = 1, kRendered = 2 };

/// Colored, labeled, source-tagged points. Colors and labels are optional
/// but, when present, parallel to the positions.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(bool with_colors, bool with_labels)
      : has_colors_(with_colors), has_labels_(with_labels) {}

  std::size_t size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }
  bool has_colors() const { return has_colors_; }
  bool has_labels() const { return has_labels_; }

  void reserve(std::size_t n);

  /// Throws kInvalidArgument for non-finite positions.
  void add(const Vec3& p, Source source, Rgb color = {}, std::uint8_t label = 0);

  const Vec3& position(std::size_t i) const { return positions_[i]; }
  Rgb color(std::size_t i) const { return has_colors_ ? colors_[i] : Rgb{}; }
  std::uint8_t label(std::size_t i) const { return has_labels_ ? labels_[i] : 0; }
  Source source(std::size_t i) const { return sources_[i]; }

  std::span<const Vec3> positions() const { return positions_; }
  std::span<const Source> sources() const { return sources_; }

  /// Overwrites a position in place; used by transforms.
  void set_position(std::size_t i, const Vec3& p) { positions_[i] = p; }

  /// Points at the given indices, in the given order.
  PointCloud subset(std::span<const std::size_t> indices) const;

  /// Appends `other`; the attribute flags become the union of both.
  void append(const PointCloud& other);

  bool operator==(const PointCloud&) const = default;

 private:
  bool has_colors_ = true;
  bool has_labels_ = false;
  std::vector<Vec3> positions_;
  std::vector<Rgb> colors_;
  std::vector<std::uint8_t> labels_;
  std::vector<Source> sources_;
};

/// Oriented 3D box given by its 8 corners. Corner i sits at
/// corner(0) + bit0(i)*e1 + bit1(i)*e2 + bit2(i)*e3, so corners 1, 2 and 4
/// span the three edges out of corner 0.
class BBox3D {
 public:
  /// Throws kInvalidArgument unless the corners form a parallelepiped
  /// (within 1e-6 m).
  BBox3D(const std::array<Vec3, 8>& corners, int class_id);

  /// Box centered at `center` with full extents `size` (length along the
  /// heading, width, height) rotated by `yaw` about +z.
  static BBox3D from_center(const Vec3& center, const Vec3& size, double yaw, int class_id);

  const std::array<Vec3, 8>& corners() const { return corners_; }
  int class_id() const { return class_id_; }
  Vec3 center() const;
  Vec3 edge(int axis) const;

  /// Containment in the box's local frame, each half extent grown by
  /// `margin`. Throws kDegenerateBox if an edge is shorter than 1e-6 m.
  bool contains(const Vec3& p, double margin) const;

 private:
  std::array<Vec3, 8> corners_;
  int class_id_;
};

PointCloud transform(const PointCloud& cloud, const RelativeTransform& xf);

inline constexpr double kDefaultBoxMargin = 0.1;

/// Keeps points outside every box grown by `margin`.
PointCloud remove_dynamic(const PointCloud& cloud, std::span<const BBox3D> boxes,
                          double margin = kDefaultBoxMargin);

/// Keeps z >= z_min. Only valid for MVS clouds: throws kFilterOnWrongSource
/// if any point is lidar-tagged.
PointCloud filter_above_height(const PointCloud& cloud, double z_min);

inline constexpr double kDefaultVoxelResolution = 0.1;

/// One point per occupied voxel of the origin-anchored grid: the centroid,
/// carrying the attributes of the member closest to it (ties go to the
/// lowest input index). Output sorted by (ix, iy, iz).
PointCloud voxel_downsample(const PointCloud& cloud, double resolution);

inline constexpr int kDefaultLidarWindow = 3;

/// Brings the clouds of the frames in [center - window/2, center + window/2]
/// (clamped to the sequence) into the center frame and concatenates them in
/// frame order. `egos[t]` maps frame-t coordinates to the common world frame.
PointCloud aggregate_frames(std::span<const PointCloud> clouds,
                            std::span<const RelativeTransform> egos, int center, int window);

}  // namespace stgeo

#endif  // STGEO_POINTCLOUD_HPP
