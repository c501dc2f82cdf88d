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

#include <filesystem>

#include "oracles.hpp"
#include "stgeo/error.hpp"
#include "stgeo/io.hpp"
#include "stgeo/nvs.hpp"
#include "stgeo/oracle.hpp"

namespace stgeo {
namespace {

const Intrinsics kCam{60, 60, 32, 24, 64, 48};

TEST(SurroundCloud, UnionInCameraOrder) {
  SurroundFrame frame = testing::plane_view(Pose::identity(), kCam, 5.0);
  const SurroundFrame other = testing::plane_view(Pose(rotation_z(0.3), {1, 0, 0}), kCam, 8.0);
  frame.push_back(other[0]);
  const PointCloud cloud = surround_cloud(frame);
  EXPECT_EQ(cloud.size(), frame[0].depth.valid_count() + frame[1].depth.valid_count());
  const PointCloud thin = surround_cloud(frame, 0.5);
  EXPECT_LT(thin.size(), cloud.size());
}

TEST(ConditionAtView, SameViewReproducesTheFrame) {
  const SurroundFrame frame = testing::plane_view(Pose::identity(), kCam, 6.0);
  const ConditionFrame c = condition_at_view(frame, Pose::identity(), kCam);
  EXPECT_EQ(c.rgb, frame[0].rgb);
  EXPECT_EQ(c.valid(), frame[0].depth.valid());
  for (std::size_t i = 0; i < c.depth.size(); ++i) {
    EXPECT_NEAR(c.depth.depth_at(i), frame[0].depth.depth_at(i), 1e-5);
  }
}

TEST(ConditionAtOffset, RangeChecks) {
  std::vector<SurroundFrame> seq(3, testing::plane_view(Pose::identity(), kCam, 6.0));
  EXPECT_EQ(condition_at_offset(seq, 0, 2).size(), 1u);
  for (const auto& [t, n] : {std::pair{0, -1}, std::pair{2, 1}, std::pair{-1, 1}, std::pair{1, 5}}) {
    try {
      condition_at_offset(seq, t, n);
      FAIL() << t << " " << n;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kOffsetOutOfRange);
    }
  }
}

TEST(Perturb, DeterministicBoundedAndLateralOnly) {
  CounterRng rng(51, 0);
  Trajectory traj;
  for (int i = 0; i < 200; ++i) traj.egos.push_back(testing::random_pose(rng, 50));
  const auto a = perturb_trajectory(traj, 9);
  const auto b = perturb_trajectory(traj, 9);
  const auto c = perturb_trajectory(traj, 10);
  EXPECT_EQ(a.tau, b.tau);
  EXPECT_NE(a.tau, c.tau);
  for (std::size_t i = 0; i < traj.egos.size(); ++i) {
    EXPECT_GE(a.tau[i], -3.0);
    EXPECT_LE(a.tau[i], 3.0);
    EXPECT_EQ(a.trajectory.egos[i].rotation(), traj.egos[i].rotation());
    const Vec3 d = a.trajectory.egos[i].translation() - traj.egos[i].translation();
    EXPECT_NEAR(d.dot(traj.lateral(i)), a.tau[i], 1e-12);
    EXPECT_NEAR((d - a.tau[i] * traj.lateral(i)).norm(), 0.0, 1e-12);
  }
}

TEST(Perturb, ModesAndDegenerateRanges) {
  Trajectory traj;
  for (int i = 0; i < 5; ++i) traj.egos.push_back(Pose::translation_only({double(i), 0, 0}));
  const auto whole = perturb_trajectory(traj, 3, -3, 3, TauMode::kPerTrajectory);
  for (const double t : whole.tau) EXPECT_EQ(t, whole.tau[0]);
  const auto zero = perturb_trajectory(traj, 3, 0.0, 0.0);
  for (std::size_t i = 0; i < traj.egos.size(); ++i) EXPECT_EQ(zero.trajectory.egos[i], traj.egos[i]);
  EXPECT_THROW(perturb_trajectory(traj, 3, 1.0, -1.0), Error);
}

TEST(ShiftLaterally, MovesAlongEgoY) {
  const Pose ego(rotation_z(0.7), {3, 4, 1});
  const Pose cam(rotation_z(1.1) * camera_to_ego_rotation(0.0), {5, 5, 2});
  const Pose moved = shift_laterally(cam, ego, 1.5);
  EXPECT_EQ(moved.rotation(), cam.rotation());
  EXPECT_LT((moved.translation() - cam.translation() - 1.5 * ego.rotation().col(1)).norm(), 1e-12);
  EXPECT_EQ(shift_laterally(cam, ego, 0.0), cam);
}

TEST(Densifiers, NnFillsAndStubPreservesHoles) {
  const SurroundFrame frame = testing::plane_view(Pose::identity(), kCam, 6.0);
  const Pose novel = Pose::translation_only({1.0, 0, 0});
  const ConditionFrame cond = condition_at_view(frame, novel, kCam);
  ASSERT_LT(cond.depth.valid_count(), cond.depth.size());
  const DenseView nn = NnViewDensifier().complete({cond, novel, kCam});
  EXPECT_EQ(nn.depth.valid_count(), nn.depth.size());
  EXPECT_NO_THROW(check_view_contract(cond, nn, 0.0, true));
  const DenseView stub = HolePreservingDensifier().complete({cond, novel, kCam});
  EXPECT_EQ(stub.depth, cond.depth);
  EXPECT_THROW(check_view_contract(cond, stub, 0.0, true), Error);
  EXPECT_NO_THROW(check_view_contract(cond, stub, 0.0, false));
}

TEST(Scc, StubRoundTripNeverSeesMoreThanTheForwardView) {
  // Fronto-parallel plane: forward valid mask at the original pose bounds
  // what a hole-preserving round trip can mark.
  const SurroundFrame frame = testing::plane_view(Pose::identity(), kCam, 6.0);
  for (const double shift : {-1.0, 0.5, 2.0}) {
    const Pose novel = Pose::translation_only({shift, 0, 0});
    const SccResult r = scc_roundtrip(frame, 0, novel, HolePreservingDensifier());
    const ConditionFrame direct = condition_at_view(frame, frame[0].pose, kCam);
    for (std::size_t i = 0; i < r.condition.depth.size(); ++i) {
      if (r.condition.depth.valid_at(i)) EXPECT_TRUE(direct.depth.valid_at(i)) << i;
    }
    EXPECT_LT(r.condition.depth.valid_count(), direct.depth.valid_count());
  }
}

TEST(Scc, IdentityIsExactAndEmptyOverlapIsNan) {
  synth::SynthScene scene;
  const SurroundFrame frame = testing::plane_view(Pose::identity(), kCam, 6.0, &scene);
  const SccResult r = scc_roundtrip(frame, 0, frame[0].pose, RaycastViewDensifier(scene));
  EXPECT_EQ(r.residuals.rgb_mae, 0.0);
  EXPECT_EQ(r.residuals.depth_median_abs, 0.0);
  const SccResiduals none = scc_residuals(ConditionFrame{RgbImage(2, 2), DepthFrame(2, 2)},
                                          RgbImage(2, 2), DepthFrame(2, 2));
  EXPECT_EQ(none.n_pixels, 0u);
  EXPECT_TRUE(std::isnan(none.rgb_mae));
}

TEST(Scc, TrainingPairLayout) {
  synth::SynthScene scene;
  const SurroundFrame frame = testing::plane_view(Pose::identity(), kCam, 6.0, &scene);
  const SccResult r = scc_roundtrip(frame, 0, Pose::translation_only({0.5, 0, 0}),
                                    NnViewDensifier());
  const auto dir = io::make_scratch_dir("stgeo-nvs-test");
  write_training_pair(dir, 3, 0, r, {{"note", "x"}});
  const auto base = dir / "003" / "cam0";
  for (const char* f : {"cond_rgb.png", "cond_depth.pfm", "cond_mask.png", "target_rgb.png",
                        "target_depth.pfm", "meta.json"}) {
    EXPECT_TRUE(std::filesystem::exists(base / f)) << f;
  }
  EXPECT_EQ(io::read_pfm(base / "cond_depth.pfm"), r.condition.depth);
  EXPECT_EQ(io::read_json(base / "meta.json").at("note"), "x");
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace stgeo
