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
#include <limits>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "stgeo/error.hpp"
#include "stgeo/pointcloud.hpp"

namespace stgeo {
namespace {

PointCloud points(std::initializer_list<Vec3> ps, Source s = Source::kLidar) {
  PointCloud c(true, false);
  for (const Vec3& p : ps) c.add(p, s);
  return c;
}

TEST(PointCloud, RejectsNonFinitePositions) {
  PointCloud c;
  EXPECT_THROW(c.add({0, std::numeric_limits<double>::quiet_NaN(), 0}, Source::kLidar), Error);
  EXPECT_THROW(c.add({std::numeric_limits<double>::infinity(), 0, 0}, Source::kMvs), Error);
}

TEST(PointCloud, AppendUnitesAttributes) {
  PointCloud a(true, false);
  a.add({0, 0, 0}, Source::kLidar, {1, 2, 3});
  PointCloud b(false, true);
  b.add({1, 0, 0}, Source::kMvs, {}, 5);
  a.append(b);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_TRUE(a.has_labels());
  EXPECT_EQ(a.label(1), 5);
  EXPECT_EQ(a.color(0), (Rgb{1, 2, 3}));
  EXPECT_EQ(a.source(1), Source::kMvs);
}

TEST(BBox, AxisAlignedContainmentWithMargin) {
  const BBox3D box = BBox3D::from_center({0, 0, 0}, {4, 2, 1}, 0.0, 1);
  EXPECT_TRUE(box.contains({1.99, 0.99, 0.49}, 0.0));
  EXPECT_FALSE(box.contains({2.05, 0, 0}, 0.0));
  EXPECT_TRUE(box.contains({2.05, 0, 0}, 0.1));
  EXPECT_FALSE(box.contains({0, 0, 0.61}, 0.1));
}

TEST(BBox, RotatedBoxUsesItsOwnFrame) {
  const BBox3D box = BBox3D::from_center({10, 5, 0}, {4, 1, 1}, std::numbers::pi / 2, 0);
  EXPECT_TRUE(box.contains({10, 6.9, 0}, 0.0));
  EXPECT_FALSE(box.contains({11.9, 5, 0}, 0.0));
}

TEST(BBox, RejectsNonParallelepipedsAndFlatBoxes) {
  std::array<Vec3, 8> corners;
  for (int i = 0; i < 8; ++i) corners[i] = Vec3(i & 1, (i >> 1) & 1, (i >> 2) & 1);
  EXPECT_NO_THROW(BBox3D(corners, 0));
  corners[7] += Vec3(0.1, 0, 0);
  EXPECT_THROW(BBox3D(corners, 0), Error);
  const BBox3D flat = BBox3D::from_center({0, 0, 0}, {1, 1, 0}, 0.0, 0);
  EXPECT_THROW(flat.contains({0, 0, 0}, 0.1), Error);
}

TEST(RemoveDynamic, DropsPointsInsideAnyGrownBox) {
  const std::vector<BBox3D> boxes = {BBox3D::from_center({5, 0, 0}, {2, 2, 2}, 0.3, 1),
                                     BBox3D::from_center({-5, 0, 0}, {1, 1, 1}, 0.0, 2)};
  CounterRng rng(11, 0);
  const PointCloud cloud = testing::random_box_cloud(rng, 5000, 7.0);
  const PointCloud kept = remove_dynamic(cloud, boxes, 0.1);
  std::size_t expected = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const bool inside = boxes[0].contains(cloud.position(i), 0.1) || boxes[1].contains(cloud.position(i), 0.1);
    if (!inside) {
      ASSERT_LT(expected, kept.size());
      EXPECT_EQ(kept.position(expected), cloud.position(i));
      ++expected;
    }
  }
  EXPECT_EQ(kept.size(), expected);
  EXPECT_LT(kept.size(), cloud.size());
}

TEST(FilterAboveHeight, KeepsInclusiveThresholdAndRejectsLidar) {
  const PointCloud mvs = points({{0, 0, -0.5}, {0, 0, 0.0}, {0, 0, 2.0}}, Source::kMvs);
  const PointCloud out = filter_above_height(mvs, 0.0);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out.position(0).z(), 0.0);
  EXPECT_THROW(filter_above_height(points({{0, 0, 1}}), 0.0), Error);
}

TEST(Transform, AppliesRigidMotion) {
  const Pose xf(rotation_z(0.5), {1, 2, 3});
  const PointCloud in = points({{1, 0, 0}, {0, 1, 0}});
  const PointCloud out = transform(in, xf);
  for (std::size_t i = 0; i < in.size(); ++i) {
    EXPECT_EQ(out.position(i), xf * in.position(i));
    EXPECT_EQ(out.source(i), in.source(i));
  }
}

TEST(Voxel, MatchesHashGridOracle) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    CounterRng rng(12, s);
    const PointCloud cloud = testing::random_box_cloud(rng, 3000, 1.0);
    EXPECT_EQ(voxel_downsample(cloud, 0.1), testing::brute_voxel(cloud, 0.1)) << s;
  }
}

TEST(Voxel, Invariants) {
  CounterRng rng(13, 0);
  const PointCloud cloud = testing::random_box_cloud(rng, 4000, 2.0);
  const double res = 0.25;
  const PointCloud out = voxel_downsample(cloud, res);
  EXPECT_LE(out.size(), cloud.size());
  std::set<std::array<std::int64_t, 3>> seen;
  std::array<std::int64_t, 3> prev{std::numeric_limits<std::int64_t>::min(), 0, 0};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Vec3& p = out.position(i);
    const std::array<std::int64_t, 3> key{static_cast<std::int64_t>(std::floor(p.x() / res)),
                                          static_cast<std::int64_t>(std::floor(p.y() / res)),
                                          static_cast<std::int64_t>(std::floor(p.z() / res))};
    EXPECT_TRUE(seen.insert(key).second);
    EXPECT_LT(prev, key);
    prev = key;
  }
}

TEST(Voxel, SpecificCases) {
  const PointCloud far = points({{0, 0, 0}, {1000, 0, 0}});
  EXPECT_EQ(voxel_downsample(far, 0.1).size(), 2u);
  PointCloud pair(true, false);
  pair.add({0.25, 0.5, 0.5}, Source::kLidar, {10, 0, 0});
  pair.add({0.75, 0.5, 0.5}, Source::kMvs, {20, 0, 0});
  const PointCloud merged = voxel_downsample(pair, 1.0);
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_EQ(merged.position(0), Vec3(0.5, 0.5, 0.5));
  // Both members are equally close to the centroid: the first wins.
  EXPECT_EQ(merged.color(0), (Rgb{10, 0, 0}));
  EXPECT_EQ(merged.source(0), Source::kLidar);
  const PointCloud negative = points({{-0.01, 0, 0}, {0.01, 0, 0}});
  EXPECT_EQ(voxel_downsample(negative, 0.1).size(), 2u);
  EXPECT_THROW(voxel_downsample(far, 0.0), Error);
  EXPECT_THROW(voxel_downsample(far, -1.0), Error);
}

TEST(Aggregate, BringsNeighboursIntoCenterFrame) {
  std::vector<PointCloud> clouds;
  std::vector<RelativeTransform> egos;
  for (int t = 0; t < 5; ++t) {
    clouds.push_back(points({{static_cast<double>(t), 0, 0}}));
    egos.push_back(Pose(rotation_z(0.1 * t), {2.0 * t, 1.0, 0.0}));
  }
  const PointCloud out = aggregate_frames(clouds, egos, 2, 3);
  ASSERT_EQ(out.size(), 3u);
  for (int j = 0; j < 3; ++j) {
    const int t = 1 + j;
    const Vec3 expected = egos[2].inverse() * (egos[t] * clouds[t].position(0));
    EXPECT_LT((out.position(j) - expected).norm(), 1e-12);
  }
  EXPECT_EQ(out.position(1), clouds[2].position(0));
  // clamped at the ends
  EXPECT_EQ(aggregate_frames(clouds, egos, 0, 3).size(), 2u);
  EXPECT_THROW(aggregate_frames(clouds, egos, 2, 2), Error);
  EXPECT_THROW(aggregate_frames(clouds, egos, 2, 0), Error);
  EXPECT_THROW(aggregate_frames(clouds, egos, 7, 3), Error);
}

}  // namespace
}  // namespace stgeo
