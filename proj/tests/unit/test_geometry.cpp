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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "stgeo/error.hpp"
#include "stgeo/geometry.hpp"

namespace stgeo {
namespace {

TEST(Intrinsics, RejectsBadFocalAndPrincipalPoint) {
  EXPECT_NO_THROW((Intrinsics{100, 100, 32, 24, 64, 48}.validate()));
  EXPECT_THROW((Intrinsics{0, 100, 32, 24, 64, 48}.validate()), Error);
  EXPECT_THROW((Intrinsics{100, -1, 32, 24, 64, 48}.validate()), Error);
  EXPECT_THROW((Intrinsics{100, 100, 64, 24, 64, 48}.validate()), Error);
  EXPECT_THROW((Intrinsics{100, 100, 32, 0, 64, 48}.validate()), Error);
}

TEST(Projection, PrincipalAxisLandsOnPrincipalPoint) {
  const Intrinsics k{500, 400, 320.5, 240.25, 640, 480};
  const PixelDepth p = project({0, 0, 7.5}, k);
  EXPECT_EQ(p.u, k.cx);
  EXPECT_EQ(p.v, k.cy);
  EXPECT_EQ(p.depth, 7.5);
}

TEST(Projection, HandComputedPoint) {
  const Intrinsics k{100, 200, 50, 40, 100, 80};
  const PixelDepth p = project({1.0, -0.5, 4.0}, k);
  EXPECT_DOUBLE_EQ(p.u, 50 + 100 * 0.25);
  EXPECT_DOUBLE_EQ(p.v, 40 - 200 * 0.125);
  const Vec3 q = unproject(75, 15, 4.0, k);
  EXPECT_DOUBLE_EQ(q.x(), 1.0);
  EXPECT_DOUBLE_EQ(q.y(), -0.5);
}

TEST(Projection, RejectsNonPositiveDepth) {
  const Intrinsics k{100, 100, 50, 40, 100, 80};
  EXPECT_THROW(project({0, 0, 0}, k), Error);
  EXPECT_THROW(project({0, 0, -1}, k), Error);
  EXPECT_THROW(unproject(1, 1, 0.0, k), Error);
}

TEST(Projection, RoundTripOnRandomCameras) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    CounterRng rng(1, s);
    const Intrinsics k = testing::random_intrinsics(rng);
    for (int i = 0; i < 200; ++i) {
      const double u = rng.uniform(0, k.width);
      const double v = rng.uniform(0, k.height);
      const double d = rng.uniform(0.1, 100);
      const PixelDepth p = project(unproject(u, v, d, k), k);
      EXPECT_NEAR(p.u, u, 1e-9);
      EXPECT_NEAR(p.v, v, 1e-9);
      EXPECT_NEAR(p.depth, d, 1e-12);
    }
  }
}

TEST(RigidTransform, RejectsNonRotations) {
  Mat3 scaled = Mat3::Identity() * 1.01;
  EXPECT_THROW(RigidTransform(scaled, Vec3::Zero()), Error);
  Mat3 reflect = Mat3::Identity();
  reflect(2, 2) = -1;
  EXPECT_THROW(RigidTransform(reflect, Vec3::Zero()), Error);
  Mat4 m = Mat4::Identity();
  m(3, 0) = 1e-3;
  EXPECT_THROW(RigidTransform::from_matrix(m), Error);
}

TEST(RigidTransform, ComposeInverseAndMatrixAgree) {
  CounterRng rng(2, 0);
  for (int i = 0; i < 50; ++i) {
    const Pose a = testing::random_pose(rng, 10);
    const Pose b = testing::random_pose(rng, 10);
    const Vec3 p(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5));
    EXPECT_LT(((a * b) * p - a * (b * p)).norm(), 1e-12);
    EXPECT_LT((a.inverse() * (a * p) - p).norm(), 1e-12);
    const Eigen::Vector4d h = a.matrix() * p.homogeneous();
    EXPECT_LT((h.head<3>() - a * p).norm(), 1e-12);
    EXPECT_EQ(RigidTransform::from_matrix(a.matrix()), a);
  }
}

TEST(RigidTransform, RelativeMapsSourceFrameIntoDestination) {
  CounterRng rng(3, 0);
  const Pose src = testing::random_pose(rng, 10);
  const Pose dst = testing::random_pose(rng, 10);
  const Vec3 p(1, 2, 3);
  EXPECT_LT((relative(src, dst) * p - dst.inverse() * (src * p)).norm(), 1e-12);
}

TEST(CameraToEgo, ZeroYawLooksForward) {
  const Mat3 r = camera_to_ego_rotation(0.0);
  // camera +z maps to ego +x, camera +x (right) to ego -y, camera +y (down) to ego -z
  EXPECT_LT((r * Vec3::UnitZ() - Vec3::UnitX()).norm(), 1e-15);
  EXPECT_LT((r * Vec3::UnitX() + Vec3::UnitY()).norm(), 1e-15);
  EXPECT_LT((r * Vec3::UnitY() + Vec3::UnitZ()).norm(), 1e-15);
  const Mat3 left = camera_to_ego_rotation(std::numbers::pi / 2);
  EXPECT_LT((left * Vec3::UnitZ() - Vec3::UnitY()).norm(), 1e-15);
}

}  // namespace
}  // namespace stgeo
