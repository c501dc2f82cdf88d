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

#include "stgeo/geometry.hpp"

#include <cmath>
#include <sstream>

#include "stgeo/error.hpp"

namespace stgeo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonPositiveDepth: return "NonPositiveDepth";
    case ErrorCode::kDegenerateBox: return "DegenerateBox";
    case ErrorCode::kFilterOnWrongSource: return "FilterOnWrongSource";
    case ErrorCode::kNonPositiveResolution: return "NonPositiveResolution";
    case ErrorCode::kEmptyWindow: return "EmptyWindow";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kDegenerateCloud: return "DegenerateCloud";
    case ErrorCode::kPointAtViewpoint: return "PointAtViewpoint";
    case ErrorCode::kEmptyPrompt: return "EmptyPrompt";
    case ErrorCode::kOffsetOutOfRange: return "OffsetOutOfRange";
    case ErrorCode::kDensifierContractViolation: return "DensifierContractViolation";
    case ErrorCode::kEmptyOverlap: return "EmptyOverlap";
    case ErrorCode::kNonPositiveGT: return "NonPositiveGT";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kFormat: return "Format";
    case ErrorCode::kBackendFailure: return "BackendFailure";
  }
  return "Unknown";
}

void Intrinsics::validate() const {
  const bool ok = std::isfinite(fx) && std::isfinite(fy) && fx > 0.0 && fy > 0.0 &&
                  width > 0 && height > 0 && cx > 0.0 && cx < width && cy > 0.0 &&
                  cy < height;
  if (!ok) {
    std::ostringstream os;
    os << "invalid intrinsics fx=" << fx << " fy=" << fy << " cx=" << cx << " cy=" << cy
       << " size=" << width << "x" << height;
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
}

PixelDepth project(const Vec3& point_cam, const Intrinsics& k) {
  const double z = point_cam.z();
  if (!(z > 0.0)) {
    throw Error(ErrorCode::kNonPositiveDepth, "point at or behind the camera plane");
  }
  return {k.fx * point_cam.x() / z + k.cx, k.fy * point_cam.y() / z + k.cy, z};
}

Vec3 unproject(double u, double v, double depth, const Intrinsics& k) {
  if (!(depth > 0.0)) {
    throw Error(ErrorCode::kNonPositiveDepth, "unproject needs depth > 0");
  }
  return {(u - k.cx) * depth / k.fx, (v - k.cy) * depth / k.fy, depth};
}

namespace {

constexpr double kRotationTolerance = 1e-9;

void check_rotation(const Mat3& r) {
  if (!r.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "rotation has non-finite entries");
  }
  const double ortho = (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
  const double det = r.determinant();
  if (ortho > kRotationTolerance || std::abs(det - 1.0) > kRotationTolerance) {
    std::ostringstream os;
    os << "rotation not orthonormal (|R^T R - I| = " << ortho << ", det = " << det << ")";
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
}

}  // namespace

RigidTransform::RigidTransform(const Mat3& rotation, const Vec3& translation)
    : rotation_(rotation), translation_(translation) {
  check_rotation(rotation_);
  if (!translation_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "translation has non-finite entries");
  }
}

RigidTransform RigidTransform::from_matrix(const Mat4& m) {
  if (m(3, 0) != 0.0 || m(3, 1) != 0.0 || m(3, 2) != 0.0 || m(3, 3) != 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "bottom row of a rigid transform must be (0,0,0,1)");
  }
  return RigidTransform(m.topLeftCorner<3, 3>(), m.topRightCorner<3, 1>());
}

Mat4 RigidTransform::matrix() const {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = rotation_;
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

RigidTransform RigidTransform::operator*(const RigidTransform& b) const {
  return unchecked(rotation_ * b.rotation_, rotation_ * b.translation_ + translation_);
}

RigidTransform RigidTransform::inverse() const {
  const Mat3 rt = rotation_.transpose();
  return unchecked(rt, -(rt * translation_));
}

Mat3 rotation_z(double radians) {
  return Eigen::AngleAxisd(radians, Vec3::UnitZ()).toRotationMatrix();
}

Mat3 camera_to_ego_rotation(double yaw) {
  // Columns are the camera axes expressed in a forward-facing ego frame:
  // camera x (right) = -ego y, camera y (down) = -ego z, camera z = ego x.
  Mat3 base;
  base << 0.0, 0.0, 1.0,
         -1.0, 0.0, 0.0,
          0.0, -1.0, 0.0;
  return rotation_z(yaw) * base;
}

}  // namespace stgeo
