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

#include "stgeo/nvs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "stgeo/curation.hpp"
#include "stgeo/error.hpp"
#include "stgeo/io.hpp"
#include "stgeo/rng.hpp"

namespace stgeo {

PointCloud surround_cloud(const SurroundFrame& frame, double voxel_resolution) {
  PointCloud cloud(true, false);
  for (const CameraView& view : frame) {
    cloud.append(depth_to_cloud(view.rgb, view.depth, view.pose, view.k));
  }
  return voxel_resolution > 0.0 ? voxel_downsample(cloud, voxel_resolution) : cloud;
}

ConditionFrame condition_at_view(const SurroundFrame& frame, const Pose& target,
                                 const Intrinsics& k, const DepthRange& range,
                                 double voxel_resolution) {
  return splat(surround_cloud(frame, voxel_resolution), target, k, range);
}

std::vector<ConditionFrame> condition_at_offset(std::span<const SurroundFrame> frames, int t, int n,
                                                const DepthRange& range,
                                                double voxel_resolution) {
  const auto count = static_cast<long>(frames.size());
  if (t < 0 || t >= count || static_cast<long>(t) + n < 0 || static_cast<long>(t) + n >= count) {
    throw Error(ErrorCode::kOffsetOutOfRange,
                "frame " + std::to_string(t) + " offset " + std::to_string(n) + " leaves the sequence");
  }
  const PointCloud cloud = surround_cloud(frames[static_cast<std::size_t>(t)], voxel_resolution);
  std::vector<ConditionFrame> out;
  for (const CameraView& view : frames[static_cast<std::size_t>(t + n)]) {
    out.push_back(splat(cloud, view.pose, view.k, range));
  }
  return out;
}

Pose shift_laterally(const Pose& cam, const Pose& ego, double tau) {
  if (tau == 0.0) return cam;
  return Pose(cam.rotation(), cam.translation() + tau * ego.rotation().col(1));
}

PerturbedTrajectory perturb_trajectory(const Trajectory& trajectory, std::uint64_t seed,
                                       double tau_min, double tau_max, TauMode mode) {
  if (!std::isfinite(tau_min) || !std::isfinite(tau_max) || tau_min > tau_max) {
    throw Error(ErrorCode::kInvalidArgument, "tau range must be finite with min <= max");
  }
  PerturbedTrajectory out;
  out.trajectory.egos.reserve(trajectory.egos.size());
  for (std::size_t i = 0; i < trajectory.egos.size(); ++i) {
    CounterRng rng(seed, mode == TauMode::kPerFrame ? i : 0);
    const double tau = rng.uniform(tau_min, tau_max);
    const Pose& ego = trajectory.egos[i];
    out.tau.push_back(tau);
    out.trajectory.egos.push_back(shift_laterally(ego, ego, tau));
  }
  return out;
}

DenseView NnViewDensifier::complete(const ViewRequest& request) const {
  const ConditionFrame& c = request.condition;
  return {fill_nearest_color(c.rgb, c.valid()), densify_nn(c.depth)};
}

DenseView HolePreservingDensifier::complete(const ViewRequest& request) const {
  return {request.condition.rgb, request.condition.depth};
}

DenseView ExternalViewDensifier::complete(const ViewRequest& request) const {
  const auto dir = io::make_scratch_dir("stgeo-view-");
  const auto rgb = dir / "cond_rgb.png";
  const auto depth = dir / "cond_depth.pfm";
  const auto mask = dir / "cond_mask.png";
  const auto out_rgb = dir / "out_rgb.png";
  const auto out_depth = dir / "out_depth.pfm";
  try {
    io::write_png_rgb(rgb, request.condition.rgb);
    io::write_pfm(depth, request.condition.depth);
    io::write_mask_png(mask, request.condition.valid());
    io::run_command(io::expand_command(command_, {{"rgb", rgb.string()},
                                                  {"depth", depth.string()},
                                                  {"mask", mask.string()},
                                                  {"out_rgb", out_rgb.string()},
                                                  {"out_depth", out_depth.string()}}));
    DenseView view{io::read_png_rgb(out_rgb),
                   io::read_pfm(out_depth, request.condition.depth.range())};
    std::filesystem::remove_all(dir);
    return view;
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
    throw;
  }
}

void check_view_contract(const ConditionFrame& condition, const DenseView& dense,
                         double tolerance, bool fills_holes) {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kDensifierContractViolation, what);
  };
  if (!dense.rgb.same_size(condition.rgb) || !dense.depth.depth().same_size(condition.rgb)) {
    fail("densified view has the wrong size");
  }
  if (fills_holes && dense.depth.valid_count() != dense.depth.size()) {
    fail("densified view has holes");
  }
  for (std::size_t i = 0; i < dense.depth.size(); ++i) {
    if (!condition.depth.valid_at(i)) continue;
    const double diff =
        std::abs(static_cast<double>(dense.depth.depth_at(i)) - condition.depth.depth_at(i));
    if (!dense.depth.valid_at(i) || !(diff <= tolerance)) {
      fail("densified depth departs from the condition by " + std::to_string(diff) + " m");
    }
  }
}

SccResiduals scc_residuals(const ConditionFrame& condition, const RgbImage& target_rgb,
                           const DepthFrame& target_depth) {
  require_same_size(condition.rgb, target_rgb, "condition and target differ in size");
  require_same_size(condition.rgb, target_depth.depth(), "condition and target differ in size");
  double rgb_sum = 0.0;
  std::vector<double> depth_err;
  for (std::size_t i = 0; i < target_rgb.size(); ++i) {
    if (!condition.depth.valid_at(i) || !target_depth.valid_at(i)) continue;
    const Rgb a = condition.rgb[i];
    const Rgb b = target_rgb[i];
    rgb_sum += std::abs(a.r - b.r) + std::abs(a.g - b.g) + std::abs(a.b - b.b);
    depth_err.push_back(std::abs(static_cast<double>(condition.depth.depth_at(i)) -
                                 static_cast<double>(target_depth.depth_at(i))));
  }
  SccResiduals r;
  r.n_pixels = depth_err.size();
  if (depth_err.empty()) return r;
  r.rgb_mae = rgb_sum / (3.0 * 255.0 * static_cast<double>(depth_err.size()));
  std::sort(depth_err.begin(), depth_err.end());
  const std::size_t mid = depth_err.size() / 2;
  r.depth_median_abs =
      depth_err.size() % 2 == 1 ? depth_err[mid] : 0.5 * (depth_err[mid - 1] + depth_err[mid]);
  return r;
}

SccResult scc_roundtrip(const SurroundFrame& frame, std::size_t camera, const Pose& novel,
                        const ViewDensifier& densifier, const DepthRange& range) {
  if (camera >= frame.size()) throw Error(ErrorCode::kInvalidArgument, "camera index out of range");
  const CameraView& view = frame[camera];
  SccResult r;
  r.forward = condition_at_view(frame, novel, view.k, range);
  r.novel = densifier.complete({r.forward, novel, view.k});
  check_view_contract(r.forward, r.novel, densifier.tolerance(), densifier.fills_holes());
  r.condition = splat(depth_to_cloud(r.novel.rgb, r.novel.depth, novel, view.k), view.pose, view.k,
                      range);
  r.target_rgb = view.rgb;
  r.target_depth = view.depth;
  r.residuals = scc_residuals(r.condition, r.target_rgb, r.target_depth);
  return r;
}

void write_training_pair(const std::filesystem::path& dir, int frame, std::size_t camera,
                         const SccResult& result, const nlohmann::json& meta) {
  char frame_name[16];
  std::snprintf(frame_name, sizeof(frame_name), "%03d", frame);
  const auto out = dir / frame_name / ("cam" + std::to_string(camera));
  io::write_png_rgb(out / "cond_rgb.png", result.condition.rgb);
  io::write_pfm(out / "cond_depth.pfm", result.condition.depth);
  io::write_mask_png(out / "cond_mask.png", result.condition.valid());
  io::write_png_rgb(out / "target_rgb.png", result.target_rgb);
  io::write_pfm(out / "target_depth.pfm", result.target_depth);
  nlohmann::json m = meta;
  m["frame"] = frame;
  m["camera"] = camera;
  m["residuals"] = {{"rgb_mae", result.residuals.rgb_mae},
                    {"depth_median_abs_m", result.residuals.depth_median_abs},
                    {"n_pixels", result.residuals.n_pixels}};
  io::write_json(out / "meta.json", m);
}

}  // namespace stgeo
