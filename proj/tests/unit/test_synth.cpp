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

#include "oracles.hpp"
#include "stgeo/error.hpp"
#include "stgeo/synth.hpp"

namespace stgeo::synth {
namespace {

TEST(Intersect, ClosedFormHits) {
  const Vec3 o(0, 0, 0);
  const Vec3 d(0, 0, 1);
  EXPECT_DOUBLE_EQ(*intersect(Plane::make({0, 0, 4}, {0, 0, -1}), o, d), 4.0);
  EXPECT_FALSE(intersect(Plane::make({0, 0, -4}, {0, 0, 1}), o, d));
  EXPECT_FALSE(intersect(Plane::make({5, 0, 4}, {0, 0, -1}, 1.0, 1.0), o, d));
  EXPECT_DOUBLE_EQ(*intersect(Sphere{{0, 0, 10}, 2.0}, o, d), 8.0);
  EXPECT_DOUBLE_EQ(*intersect(Sphere{{0, 0, 0}, 2.0}, o, d), 2.0);  // from inside
  EXPECT_FALSE(intersect(Sphere{{3, 0, 10}, 2.0}, o, d));
  EXPECT_DOUBLE_EQ(*intersect(Box{{-1, -1, 3}, {1, 1, 5}}, o, d), 3.0);
  EXPECT_DOUBLE_EQ(*intersect(Box{{-1, -1, -1}, {1, 1, 5}}, o, d), 5.0);
  EXPECT_FALSE(intersect(Box{{2, 2, 3}, {3, 3, 5}}, o, d));
}

TEST(CastRay, NearestPrimitiveWins) {
  SynthScene s;
  s.primitives.push_back({Plane::make({0, 0, 10}, {0, 0, -1}), ColorFn::constant({1, 1, 1})});
  s.primitives.push_back({Sphere{{0, 0, 5}, 1.0}, ColorFn::constant({2, 2, 2})});
  const auto h = cast_ray(s, Vec3::Zero(), Vec3::UnitZ());
  ASSERT_TRUE(h);
  EXPECT_EQ(h->primitive, 1u);
  EXPECT_DOUBLE_EQ(h->s, 4.0);
  EXPECT_EQ(h->color, (Rgb{2, 2, 2}));
  EXPECT_FALSE(cast_ray(s, Vec3::Zero(), -Vec3::UnitZ()));
}

TEST(Raycast, DepthIsCameraZ) {
  SynthScene s;
  s.primitives.push_back({Plane::make({0, 0, 7}, {0, 0, -1}), ColorFn::constant({9, 9, 9})});
  const Intrinsics k{40, 40, 20, 15, 40, 30};
  const RaycastResult r = raycast_depth(s, Pose::identity(), k);
  for (std::size_t i = 0; i < r.depth.size(); ++i) {
    ASSERT_TRUE(r.depth.valid_at(i));
    EXPECT_NEAR(r.depth.depth_at(i), 7.0f, 1e-6);
    EXPECT_EQ(r.primitive[i], 0);
  }
  EXPECT_EQ(r.sky, Mask(40, 30, 0));
}

TEST(Raycast, MissesAreSkyAndFarHitsInvalid) {
  SynthScene s;
  s.primitives.push_back({Plane::make({0, 0, 500}, {0, 0, -1}, 10.0, 10.0), ColorFn::constant({})});
  const Intrinsics k{40, 40, 20, 15, 40, 30};
  const RaycastResult r = raycast_depth(s, Pose::identity(), k, {0.1, 100.0});
  EXPECT_FALSE(r.depth.valid(20, 15));
  EXPECT_EQ(r.sky(20, 15), 0);
  EXPECT_EQ(r.sky(0, 0), 1);
  EXPECT_EQ(r.rgb(0, 0), kSkyColor);
  EXPECT_EQ(r.primitive(0, 0), -1);
}

TEST(Raycast, AgreesWithBruteForceIntersection) {
  CounterRng rng(61, 0);
  SynthScene s;
  for (int i = 0; i < 6; ++i) {
    const Vec3 c(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(4, 12));
    if (i % 2 == 0) {
      s.primitives.push_back({Sphere{c, rng.uniform(0.3, 1.5)}, ColorFn::constant({})});
    } else {
      s.primitives.push_back({Box{c - Vec3::Constant(0.7), c + Vec3::Constant(0.9)}, ColorFn::constant({})});
    }
  }
  const Intrinsics k{30, 30, 16, 12, 32, 24};
  const Pose cam = testing::random_pose(rng, 0.5);
  const RaycastResult r = raycast_depth(s, cam, k);
  for (int y = 0; y < k.height; ++y) {
    for (int x = 0; x < k.width; ++x) {
      const Vec3 dir = cam.rotation() * Vec3((x - k.cx) / k.fx, (y - k.cy) / k.fy, 1.0);
      double best = INFINITY;
      for (const auto& p : s.primitives) {
        if (const auto t = intersect(p.shape, cam.translation(), dir)) best = std::min(best, *t);
      }
      if (std::isfinite(best) && best >= 0.1 && best <= 100) {
        EXPECT_TRUE(r.depth.valid(x, y));
        EXPECT_EQ(r.depth.depth(x, y), static_cast<float>(best));
      } else {
        EXPECT_FALSE(r.depth.valid(x, y));
      }
    }
  }
}

TEST(Checker, AlternatesPerCell) {
  const ColorFn c = ColorFn::checker({1, 0, 0}, {2, 0, 0}, 1.0);
  EXPECT_EQ(c.at({0.5, 0.5, 0}), (Rgb{1, 0, 0}));
  EXPECT_EQ(c.at({1.5, 0.5, 0}), (Rgb{2, 0, 0}));
  EXPECT_EQ(c.at({-0.5, 0.5, 0}), (Rgb{2, 0, 0}));
  EXPECT_EQ(c.at({1.5, 1.5, 0}), (Rgb{1, 0, 0}));
}

TEST(Validate, RejectsBadPrimitives) {
  SynthScene s;
  s.primitives.push_back({Sphere{{0, 0, 0}, -1.0}, ColorFn{}});
  EXPECT_THROW(s.validate(), Error);
  s.primitives = {{Box{{1, 0, 0}, {0, 1, 1}}, ColorFn{}}};
  EXPECT_THROW(s.validate(), Error);
  s.primitives = {{Plane{{0, 0, 0}, {0, 0, 2}, {1, 0, 0}}, ColorFn{}}};
  EXPECT_THROW(s.validate(), Error);
}

TEST(SampleCloud, PointsLieOnSurfacesAndAreSeeded) {
  SynthScene s;
  s.primitives.push_back({Sphere{{0, 0, 5}, 1.0}, ColorFn::constant({5, 5, 5})});
  s.primitives.push_back({Plane::make({0, 0, 0}, {0, 0, 1}, 2.0, 2.0), ColorFn::constant({})});
  s.primitives.push_back({Plane::make({0, 0, 0}, {0, 1, 0}), ColorFn::constant({})});
  const PointCloud a = sample_cloud(s, 50.0, 4);
  EXPECT_EQ(a, sample_cloud(s, 50.0, 4));
  EXPECT_GT(a.size(), 600u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Vec3& p = a.position(i);
    const bool on_sphere = std::abs((p - Vec3(0, 0, 5)).norm() - 1.0) < 1e-12;
    const bool on_plane = p.z() == 0.0 && std::abs(p.x()) <= 2 && std::abs(p.y()) <= 2;
    EXPECT_TRUE(on_sphere || on_plane);
  }
  EXPECT_THROW(sample_cloud(s, -1.0, 0), Error);
}

}  // namespace
}  // namespace stgeo::synth
