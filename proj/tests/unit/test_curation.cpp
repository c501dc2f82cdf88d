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

#include "oracles.hpp"
#include "stgeo/curation.hpp"
#include "stgeo/error.hpp"
#include "stgeo/fixture.hpp"

namespace stgeo {
namespace {

Mask random_mask(CounterRng& rng, int w, int h, double density) {
  Mask m(w, h);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = rng.uniform() < density ? 1 : 0;
  return m;
}

TEST(Dilate, MatchesBruteForce) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    CounterRng rng(31, s);
    const Mask m = random_mask(rng, 37, 23, 0.02);
    const int r = static_cast<int>(s % 4);
    const Mask d = dilate_chebyshev(m, r);
    for (int y = 0; y < m.height(); ++y) {
      for (int x = 0; x < m.width(); ++x) {
        bool near = false;
        for (int yy = 0; yy < m.height(); ++yy) {
          for (int xx = 0; xx < m.width(); ++xx) {
            near |= m(xx, yy) && std::max(std::abs(xx - x), std::abs(yy - y)) <= r;
          }
        }
        ASSERT_EQ(d(x, y) != 0, near) << x << "," << y << " r=" << r;
      }
    }
  }
}

TEST(NearestValid, MatchesBruteForceIncludingTies) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    CounterRng rng(32, s);
    // Sparse lattices produce many equidistant candidates.
    Mask m(31, 17);
    if (s % 3 == 0) {
      for (int y = 0; y < m.height(); y += 4) {
        for (int x = 0; x < m.width(); x += 4) m(x, y) = 1;
      }
    } else {
      m = random_mask(rng, 31, 17, s % 3 == 1 ? 0.01 : 0.2);
      m(static_cast<int>(s) % 31, 3) = 1;
    }
    EXPECT_EQ(nearest_valid_index(m), testing::brute_nearest_index(m)) << s;
  }
}

TEST(NearestValid, EmptyMaskThrows) {
  try {
    nearest_valid_index(Mask(4, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyPrompt);
  }
}

TEST(DensifyNn, KeepsValidPixelsAndFillsTheRest) {
  CounterRng rng(33, 0);
  const DepthFrame sparse = testing::random_sparse_frame(rng, 40, 30, 0.05);
  const DepthFrame dense = densify_nn(sparse);
  EXPECT_EQ(dense.valid_count(), dense.size());
  for (std::size_t i = 0; i < sparse.size(); ++i) {
    if (sparse.valid_at(i)) EXPECT_EQ(dense.depth_at(i), sparse.depth_at(i));
  }
}

TEST(DensifyNn, SinglePixelFillsEverything) {
  DepthFrame f(9, 7);
  f.set(3, 2, 12.5f);
  const DepthFrame d = densify_nn(f);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(d.depth_at(i), 12.5f);
}

TEST(FillNearestColor, AgreesWithDepthChoice) {
  CounterRng rng(34, 0);
  const DepthFrame sparse = testing::random_sparse_frame(rng, 20, 20, 0.1);
  RgbImage rgb(20, 20);
  for (std::size_t i = 0; i < rgb.size(); ++i) rgb[i] = {static_cast<std::uint8_t>(i), 0, 0};
  const RgbImage filled = fill_nearest_color(rgb, sparse.valid());
  const auto nearest = nearest_valid_index(sparse.valid());
  for (std::size_t i = 0; i < rgb.size(); ++i) EXPECT_EQ(filled[i], rgb[nearest[i]]);
}

TEST(ApplySky, OverridesOnlySkyPixels) {
  DepthFrame d(3, 1);
  d.set(0, 0, 4.0f);
  d.set(1, 0, 5.0f);
  Mask sky(3, 1);
  sky(1, 0) = 1;
  sky(2, 0) = 1;
  const DepthFrame out = apply_sky(d, sky, 100.0);
  EXPECT_EQ(out.depth(0, 0), 4.0f);
  EXPECT_EQ(out.depth(1, 0), 100.0f);
  EXPECT_EQ(out.depth(2, 0), 100.0f);
  EXPECT_THROW(apply_sky(d, Mask(2, 1), 100.0), Error);
  EXPECT_THROW(apply_sky(d, sky, 150.0), Error);
}

TEST(FuseDepth, LidarWinsAndMvsKeepsItsDistance) {
  const Intrinsics k{40, 40, 20, 15, 40, 30};
  PointCloud lidar(true, false);
  lidar.add(unproject(10, 10, 20.0, k), Source::kLidar);
  PointCloud mvs(true, false);
  mvs.add(unproject(10, 10, 5.0, k), Source::kMvs);   // same pixel, nearer
  mvs.add(unproject(12, 12, 5.0, k), Source::kMvs);   // Chebyshev 2: suppressed
  mvs.add(unproject(13, 10, 5.0, k), Source::kMvs);   // Chebyshev 3: kept
  const DepthPrompt p = fuse_depth(lidar, mvs, Pose::identity(), k, 2);
  EXPECT_EQ(p.source(10, 10), PromptSource::kLidar);
  EXPECT_FLOAT_EQ(p.depth.depth(10, 10), 20.0f);
  EXPECT_EQ(p.source(12, 12), PromptSource::kNone);
  EXPECT_FALSE(p.depth.valid(12, 12));
  EXPECT_EQ(p.source(13, 10), PromptSource::kMvs);
  EXPECT_EQ(p.depth.valid_count(), 2u);
}

TEST(MedianBackend, KeepsLidarPixelsAndFillsAll) {
  CounterRng rng(35, 0);
  const Intrinsics k{30, 30, 16, 12, 32, 24};
  const PointCloud lidar = testing::random_frustum_cloud(rng, k, 60, {});
  const PointCloud mvs = testing::random_frustum_cloud(rng, k, 200, {});
  const DepthPrompt p = fuse_depth(lidar, mvs, Pose::identity(), k);
  const DepthFrame init = densify_nn(p);
  const RgbImage rgb(k.width, k.height);
  const Pose cam;
  const DepthFrame out = MedianBackend().complete({rgb, p, init, cam, k, 0, 0});
  EXPECT_NO_THROW(check_densifier_contract(p, out, 0.0));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (p.source[i] == PromptSource::kLidar) EXPECT_EQ(out.depth_at(i), p.depth.depth_at(i));
  }
}

TEST(Contract, DetectsHolesSizeAndLidarDeparture) {
  DepthPrompt p{DepthFrame(2, 1), Raster<PromptSource>(2, 1), RgbImage(2, 1)};
  p.depth.set(0, 0, 10.0f);
  p.source(0, 0) = PromptSource::kLidar;
  DepthFrame ok(2, 1);
  ok.set(0, 0, 10.0f);
  ok.set(1, 0, 3.0f);
  EXPECT_NO_THROW(check_densifier_contract(p, ok, 0.0));
  DepthFrame moved = ok;
  moved.set(0, 0, 10.5f);
  EXPECT_THROW(check_densifier_contract(p, moved, 0.01), Error);
  EXPECT_NO_THROW(check_densifier_contract(p, moved, 0.6));
  DepthFrame hole = ok;
  hole.clear(1, 0);
  EXPECT_THROW(check_densifier_contract(p, hole, 1.0), Error);
  EXPECT_THROW(check_densifier_contract(p, DepthFrame(3, 1), 1.0), Error);
}

class HoleBackend final : public DensifierBackend {
 public:
  std::string name() const override { return "holes"; }
  DepthFrame complete(const DensifyRequest& r) const override {
    return DepthFrame(r.k.width, r.k.height);
  }
};

fixture::DrivingFixture small_fixture() {
  fixture::DrivingSpec spec;
  spec.frames = 3;
  spec.cameras = 2;
  spec.width = 96;
  spec.height = 64;
  return fixture::make_driving(spec);
}

TEST(Curate, BackendFailuresNameTheStage) {
  const auto fx = small_fixture();
  try {
    curate(fx.inputs, 1, CurationConfig{}, HoleBackend());
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "backend");
    EXPECT_EQ(e.code(), ErrorCode::kDensifierContractViolation);
  }
  try {
    curate(fx.inputs, 1, CurationConfig{}, ExternalProcessBackend("exit 3"));
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "backend");
    EXPECT_EQ(e.code(), ErrorCode::kBackendFailure);
  }
}

TEST(Curate, CloudHasNoPointsInsideMovingObjects) {
  const auto fx = small_fixture();
  const CurationConfig cfg;
  const PointCloud cloud = curation_cloud(fx.inputs, 1, cfg);
  ASSERT_FALSE(cloud.empty());
  const auto& in = fx.inputs[1];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3 ego = in.ego.inverse() * cloud.position(i);
    // Ground returns on the bottom face are static; check the interior.
    for (const BBox3D& b : in.boxes) EXPECT_FALSE(b.contains(ego, -1e-3)) << i;
  }
}

TEST(Curate, MedianBackendOutputIsCompleteAndKeepsLidar) {
  const auto fx = small_fixture();
  const auto views = curate(fx.inputs, 1, CurationConfig{}, MedianBackend());
  ASSERT_EQ(views.size(), 2u);
  for (std::size_t c = 0; c < views.size(); ++c) {
    const CuratedView& v = views[c];
    EXPECT_EQ(v.dense.valid_count(), v.dense.size());
    std::size_t lidar = 0;
    for (std::size_t i = 0; i < v.dense.size(); ++i) {
      if (v.prompt.source[i] != PromptSource::kLidar) continue;
      ++lidar;
      if (fx.inputs[1].cameras[c].sky[i]) continue;
      EXPECT_EQ(v.dense.depth_at(i), v.prompt.depth.depth_at(i));
    }
    EXPECT_GT(lidar, 0u);
  }
  // Deterministic.
  const auto again = curate(fx.inputs, 1, CurationConfig{}, MedianBackend());
  EXPECT_EQ(again[0].dense, views[0].dense);
}

TEST(Curate, WindowFromConfigIsValidated) {
  const auto fx = small_fixture();
  CurationConfig cfg;
  cfg.lidar_window = 2;
  EXPECT_THROW(curate(fx.inputs, 1, cfg, MedianBackend()), StageError);
}

}  // namespace
}  // namespace stgeo
