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

#ifndef STGEO_CURATION_HPP
#define STGEO_CURATION_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "stgeo/geometry.hpp"
#include "stgeo/pointcloud.hpp"
#include "stgeo/raster.hpp"
#include "stgeo/render.hpp"

namespace stgeo {

enum class PromptSource : std::uint8_t { kNone = 0, kLidar = 1, kMvs = 2 };

/// Sparse depth plus a per-pixel origin tag; tag is kNone exactly where the
/// depth is invalid.
struct DepthPrompt {
  DepthFrame depth;
  Raster<PromptSource> source;
  RgbImage rgb;  // splatted point colors, black where invalid
};

inline constexpr int kDefaultLidarPriorityRadius = 2;

/// Splats LiDAR, then MVS into pixels farther than `lidar_priority_radius`
/// (Chebyshev) from every LiDAR pixel.
DepthPrompt fuse_depth(const PointCloud& lidar, const PointCloud& mvs, const Pose& cam,
                       const Intrinsics& k, int lidar_priority_radius = kDefaultLidarPriorityRadius,
                       const DepthRange& range = {});

/// 1 where some set pixel of `mask` lies within Chebyshev distance `radius`.
Mask dilate_chebyshev(const Mask& mask, int radius);

/// For every pixel, the row-major index of the nearest nonzero pixel of
/// `mask` by Euclidean distance; ties go to the smaller row, then the
/// smaller column. Linear time. Throws kEmptyPrompt when `mask` is empty.
std::vector<std::size_t> nearest_valid_index(const Mask& mask);

/// Fills every invalid pixel with the depth of its nearest valid pixel.
DepthFrame densify_nn(const DepthPrompt& prompt);
DepthFrame densify_nn(const DepthFrame& sparse);

/// Nearest-valid color fill matching densify_nn's choice of pixel.
RgbImage fill_nearest_color(const RgbImage& rgb, const Mask& valid);

inline constexpr double kDefaultSkyDepth = 100.0;

/// Throws kSizeMismatch, or kInvalidArgument when sky_depth lies outside
/// the frame's range.
DepthFrame apply_sky(const DepthFrame& depth, const Mask& sky_mask,
                     double sky_depth = kDefaultSkyDepth);

/// Everything a completion backend may look at for one camera.
struct DensifyRequest {
  const RgbImage& rgb;
  const DepthPrompt& prompt;
  const DepthFrame& initial;  // densify_nn(prompt)
  const Pose& cam;
  const Intrinsics& k;
  int frame = 0;
  int camera = 0;
};

/// Completion seam. Output must be valid everywhere and match the prompt
/// at lidar pixels within tolerance().
class DensifierBackend {
 public:
  virtual ~DensifierBackend() = default;
  virtual std::string name() const = 0;
  virtual DepthFrame complete(const DensifyRequest& request) const = 0;
  virtual double tolerance() const { return 0.0; }
  /// False asks the pipeline to never call complete() concurrently.
  virtual bool thread_safe() const { return true; }
};

/// Keeps lidar pixels and replaces mvs / empty pixels of the initial fill
/// by the lower median of their 3x3 neighborhood.
class MedianBackend final : public DensifierBackend {
 public:
  std::string name() const override { return "nn-median"; }
  DepthFrame complete(const DensifyRequest& request) const override;
};

/// Runs `command` through the shell with the placeholders {rgb}, {prompt},
/// {tags} and {out} replaced by paths in a fresh temporary directory. The
/// command must write a PFM to {out}; a nonzero exit is kBackendFailure.
class ExternalProcessBackend final : public DensifierBackend {
 public:
  explicit ExternalProcessBackend(std::string command, double tolerance = 0.0)
      : command_(std::move(command)), tolerance_(tolerance) {}
  std::string name() const override { return "external"; }
  DepthFrame complete(const DensifyRequest& request) const override;
  double tolerance() const override { return tolerance_; }

 private:
  std::string command_;
  double tolerance_;
};

/// Throws kDensifierContractViolation unless `dense` has the prompt's size,
/// is valid everywhere, and is within `tolerance` of the prompt at lidar
/// pixels.
void check_densifier_contract(const DepthPrompt& prompt, const DepthFrame& dense,
                              double tolerance);

struct CameraInput {
  Pose pose;  // camera to world
  Intrinsics k;
  RgbImage rgb;
  Mask sky;        // 1 = sky
  Mask exclusion;  // 1 = dynamic object or otherwise untrusted
};

/// Inputs for one time step. LiDAR points and boxes are in that step's ego
/// frame; the MVS cloud is in the world frame.
struct FrameInput {
  PointCloud lidar;
  RelativeTransform ego;  // ego -> world
  std::vector<BBox3D> boxes;
  PointCloud mvs;
  std::vector<CameraInput> cameras;
};

struct CurationConfig {
  DepthRange range;
  int lidar_window = kDefaultLidarWindow;
  double voxel_resolution = kDefaultVoxelResolution;
  double hpr_gamma = kDefaultHprGamma;
  int lidar_priority_radius = kDefaultLidarPriorityRadius;
  double box_margin = kDefaultBoxMargin;
  double mvs_min_height = 0.0;  // ego z, the LiDAR sits at the origin
  double sky_depth = kDefaultSkyDepth;
};

struct CuratedView {
  DepthPrompt prompt;
  DepthFrame initial;
  DepthFrame dense;
};

/// Static world-frame cloud for frame t after aggregation, dynamic removal,
/// MVS filtering and per-source voxel downsampling.
PointCloud curation_cloud(std::span<const FrameInput> frames, int t, const CurationConfig& config);

/// Full pipeline for every camera of frame t. Failures are rethrown as
/// StageError naming the stage.
std::vector<CuratedView> curate(std::span<const FrameInput> frames, int t,
                                const CurationConfig& config, const DensifierBackend& backend);

/// Per-camera tail of the pipeline on an already built cloud.
CuratedView curate_view(const PointCloud& cloud, const CameraInput& camera,
                        const CurationConfig& config, const DensifierBackend& backend,
                        int frame = 0, int camera_index = 0);

}  // namespace stgeo

#endif  // STGEO_CURATION_HPP
