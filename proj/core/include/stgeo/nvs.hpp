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

#ifndef STGEO_NVS_HPP
#define STGEO_NVS_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stgeo/geometry.hpp"
#include "stgeo/pointcloud.hpp"
#include "stgeo/raster.hpp"
#include "stgeo/render.hpp"

namespace stgeo {

/// One camera's dense RGB-D observation at a time step.
struct CameraView {
  RgbImage rgb;
  DepthFrame depth;
  Pose pose;  // camera to world
  Intrinsics k;
};

/// All rig cameras at one time step.
using SurroundFrame = std::vector<CameraView>;

/// Union of depth_to_cloud over the cameras, in camera order. A positive
/// `voxel_resolution` thins the union with voxel_downsample.
PointCloud surround_cloud(const SurroundFrame& frame, double voxel_resolution = 0.0);

/// Splats the surround cloud of `frame` into an arbitrary view.
ConditionFrame condition_at_view(const SurroundFrame& frame, const Pose& target,
                                 const Intrinsics& k, const DepthRange& range = {},
                                 double voxel_resolution = 0.0);

/// Projects the surround cloud at t into every camera of frame t + n.
/// Throws kOffsetOutOfRange when t or t + n leaves the sequence.
std::vector<ConditionFrame> condition_at_offset(std::span<const SurroundFrame> frames, int t, int n,
                                                const DepthRange& range = {},
                                                double voxel_resolution = 0.0);

inline constexpr std::array<int, 2> kDefaultOffsets{-2, 2};
inline constexpr std::array<int, 2> kAugmentationOffsets{-4, 4};

/// Ego poses (ego to world; x forward, y left, z up) indexed by frame.
struct Trajectory {
  std::vector<Pose> egos;

  /// World-frame unit vector along ego +y at frame i.
  Vec3 lateral(std::size_t i) const { return egos[i].rotation().col(1); }
};

enum class TauMode { kPerFrame, kPerTrajectory };

inline constexpr double kDefaultTauMin = -3.0;
inline constexpr double kDefaultTauMax = 3.0;

struct PerturbedTrajectory {
  Trajectory trajectory;
  std::vector<double> tau;  // lateral offset applied at each frame, meters
};

/// Shifts every pose by tau_i along its own lateral axis, tau_i uniform in
/// [tau_min, tau_max]. Draw i comes from stream i of `seed` (per frame) or
/// stream 0 for all frames (per trajectory). Rotations are untouched.
PerturbedTrajectory perturb_trajectory(const Trajectory& trajectory, std::uint64_t seed,
                                       double tau_min = kDefaultTauMin,
                                       double tau_max = kDefaultTauMax,
                                       TauMode mode = TauMode::kPerFrame);

/// Camera pose moved by `tau` along the ego lateral axis of `ego`.
Pose shift_laterally(const Pose& cam, const Pose& ego, double tau);

struct DenseView {
  RgbImage rgb;
  DepthFrame depth;
};

struct ViewRequest {
  const ConditionFrame& condition;
  const Pose& pose;
  const Intrinsics& k;
};

/// Novel-view completion seam.
class ViewDensifier {
 public:
  virtual ~ViewDensifier() = default;
  virtual std::string name() const = 0;
  virtual DenseView complete(const ViewRequest& request) const = 0;
  /// Allowed depth departure at valid condition pixels, meters.
  virtual double tolerance() const { return 0.0; }
  /// False for stand-ins that may leave holes.
  virtual bool fills_holes() const { return true; }
};

/// densify_nn on depth plus nearest-valid color fill.
class NnViewDensifier final : public ViewDensifier {
 public:
  std::string name() const override { return "nn"; }
  DenseView complete(const ViewRequest& request) const override;
};

/// Returns the condition unchanged.
class HolePreservingDensifier final : public ViewDensifier {
 public:
  std::string name() const override { return "stub"; }
  DenseView complete(const ViewRequest& request) const override;
  bool fills_holes() const override { return false; }
};

/// Shell command with {rgb}, {depth}, {mask}, {out_rgb} and {out_depth}
/// placeholders; see ExternalProcessBackend.
class ExternalViewDensifier final : public ViewDensifier {
 public:
  explicit ExternalViewDensifier(std::string command, double tolerance = 0.0)
      : command_(std::move(command)), tolerance_(tolerance) {}
  std::string name() const override { return "external"; }
  DenseView complete(const ViewRequest& request) const override;
  double tolerance() const override { return tolerance_; }

 private:
  std::string command_;
  double tolerance_;
};

/// Throws kDensifierContractViolation on a size mismatch, a hole in a
/// hole-filling output, or a depth departure beyond tolerance.
void check_view_contract(const ConditionFrame& condition, const DenseView& dense,
                         double tolerance, bool fills_holes);

struct SccResiduals {
  double rgb_mae = std::numeric_limits<double>::quiet_NaN();  // in [0, 1]
  double depth_median_abs = std::numeric_limits<double>::quiet_NaN();  // meters
  std::size_t n_pixels = 0;
};

struct SccResult {
  ConditionFrame forward;    // surround cloud seen from the novel pose
  DenseView novel;           // densifier output there
  ConditionFrame condition;  // novel view reprojected to the original pose
  RgbImage target_rgb;
  DepthFrame target_depth;
  SccResiduals residuals;
};

/// Forward to `novel`, densify, reproject to camera `camera` of `frame`,
/// and compare against that camera's dense frame on the intersection of
/// the two valid masks.
SccResult scc_roundtrip(const SurroundFrame& frame, std::size_t camera, const Pose& novel,
                        const ViewDensifier& densifier, const DepthRange& range = {});

SccResiduals scc_residuals(const ConditionFrame& condition, const RgbImage& target_rgb,
                           const DepthFrame& target_depth);

/// Writes {dir}/{frame}/{camera}/cond_rgb.png, cond_depth.pfm,
/// cond_mask.png, target_rgb.png, target_depth.pfm and meta.json.
void write_training_pair(const std::filesystem::path& dir, int frame, std::size_t camera,
                         const SccResult& result, const nlohmann::json& meta);

}  // namespace stgeo

#endif  // STGEO_NVS_HPP
