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
//
// Pinhole camera model and rigid-body pose algebra.
//
// Conventions used throughout the library:
//   * right-handed frames; a camera looks down +z, image u grows to the
//     right and v grows downwards;
//   * pixel (i, j) has its center at u = i, v = j;
//   * depth is the camera-frame z coordinate, never the ray length;
//   * a Pose maps camera coordinates to world coordinates.

#ifndef STGEO_GEOMETRY_HPP
#define STGEO_GEOMETRY_HPP

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace stgeo {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  /// Throws kInvalidArgument unless fx, fy > 0 and the principal point
  /// lies strictly inside the raster.
  void validate() const;

  bool operator==(const Intrinsics&) const = default;
};

struct PixelDepth {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

/// Throws kNonPositiveDepth when point_cam.z() <= 0.
PixelDepth project(const Vec3& point_cam, const Intrinsics& k);

/// Throws kNonPositiveDepth when depth <= 0.
Vec3 unproject(double u, double v, double depth, const Intrinsics& k);

/// Rigid transform p -> R p + t between two frames. Also used as the
/// camera-to-world Pose.
class RigidTransform {
 public:
  RigidTransform() : rotation_(Mat3::Identity()), translation_(Vec3::Zero()) {}

  /// Validates orthonormality and det = +1 within 1e-9.
  RigidTransform(const Mat3& rotation, const Vec3& translation);

  /// Validates the bottom row and the rotation block.
  static RigidTransform from_matrix(const Mat4& m);

  static RigidTransform identity() { return {}; }
  static RigidTransform translation_only(const Vec3& t) {
    return unchecked(Mat3::Identity(), t);
  }

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }
  Mat4 matrix() const;

  Vec3 apply(const Vec3& p) const { return rotation_ * p + translation_; }
  Vec3 operator*(const Vec3& p) const { return apply(p); }

  /// (a * b)(p) = a(b(p)).
  RigidTransform operator*(const RigidTransform& b) const;

  RigidTransform inverse() const;

  bool operator==(const RigidTransform&) const = default;

 private:
  static RigidTransform unchecked(const Mat3& r, const Vec3& t) {
    RigidTransform x;
    x.rotation_ = r;
    x.translation_ = t;
    return x;
  }

  Mat3 rotation_;
  Vec3 translation_;
};

/// Camera-to-world pose.
using Pose = RigidTransform;

/// 4x4 rigid map between two frames, e.g. camera frame a -> camera frame b.
using RelativeTransform = RigidTransform;

inline Pose compose(const Pose& a, const Pose& b) { return a * b; }
inline Pose inverse(const Pose& a) { return a.inverse(); }

/// Maps points expressed in the camera frame of `src` into the camera
/// frame of `dst`: inverse(dst) * src.
inline RelativeTransform relative(const Pose& src, const Pose& dst) {
  return dst.inverse() * src;
}

/// Rotation about the z axis; handy for ego yaw.
Mat3 rotation_z(double radians);

/// Rotation taking camera axes (x right, y down, z forward) to an ego frame
/// with x forward, y left, z up, then yawed by `yaw` about ego z.
Mat3 camera_to_ego_rotation(double yaw);

}  // namespace stgeo

#endif  // STGEO_GEOMETRY_HPP
