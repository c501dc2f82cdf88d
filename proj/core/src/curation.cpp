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

#include "stgeo/curation.hpp"

#include <algorithm>
#include <array>
#include <filesystem>

#include "stgeo/error.hpp"
#include "stgeo/io.hpp"

namespace stgeo {

namespace fs = std::filesystem;

Mask dilate_chebyshev(const Mask& mask, int radius) {
  if (radius < 0) throw Error(ErrorCode::kInvalidArgument, "dilation radius must be >= 0");
  const int w = mask.width();
  const int h = mask.height();
  // Summed-area table with a zero border row and column.
  std::vector<std::int64_t> sat(static_cast<std::size_t>(w + 1) * (h + 1), 0);
  const auto at = [&](int x, int y) -> std::int64_t& {
    return sat[static_cast<std::size_t>(y) * (w + 1) + x];
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      at(x + 1, y + 1) = (mask(x, y) ? 1 : 0) + at(x, y + 1) + at(x + 1, y) - at(x, y);
    }
  }
  Mask out(w, h, 0);
  for (int y = 0; y < h; ++y) {
    const int y0 = std::max(0, y - radius);
    const int y1 = std::min(h, y + radius + 1);
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(0, x - radius);
      const int x1 = std::min(w, x + radius + 1);
      out(x, y) = at(x1, y1) - at(x0, y1) - at(x1, y0) + at(x0, y0) > 0 ? 1 : 0;
    }
  }
  return out;
}

DepthPrompt fuse_depth(const PointCloud& lidar, const PointCloud& mvs, const Pose& cam,
                       const Intrinsics& k, int lidar_priority_radius, const DepthRange& range) {
  ConditionFrame lid = splat(lidar, cam, k, range);
  const ConditionFrame mv = splat(mvs, cam, k, range);
  const Mask near = dilate_chebyshev(lid.valid(), lidar_priority_radius);

  DepthPrompt prompt{std::move(lid.depth), Raster<PromptSource>(k.width, k.height),
                     std::move(lid.rgb)};
  for (std::size_t i = 0; i < prompt.depth.size(); ++i) {
    if (prompt.depth.valid_at(i)) {
      prompt.source[i] = PromptSource::kLidar;
    } else if (!near[i] && mv.depth.valid_at(i)) {
      prompt.depth.set_index(i, mv.depth.depth_at(i));
      prompt.rgb[i] = mv.rgb[i];
      prompt.source[i] = PromptSource::kMvs;
    }
  }
  return prompt;
}

std::vector<std::size_t> nearest_valid_index(const Mask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  constexpr std::int64_t kNoRow = -1;

  // Column pass: nearest set row in the same column, the upper one on ties.
  std::vector<std::int64_t> row_of(mask.size(), kNoRow);
  bool any = false;
  for (int x = 0; x < w; ++x) {
    std::int64_t last = kNoRow;
    for (int y = 0; y < h; ++y) {
      if (mask(x, y)) last = y;
      row_of[mask.index(x, y)] = last;
    }
    last = kNoRow;
    for (int y = h - 1; y >= 0; --y) {
      if (mask(x, y)) last = y;
      std::int64_t& best = row_of[mask.index(x, y)];
      if (last != kNoRow && (best == kNoRow || last - y < y - best)) best = last;
    }
    any = any || row_of[mask.index(x, 0)] != kNoRow;
  }
  if (!any) throw Error(ErrorCode::kEmptyPrompt, "no valid pixel to interpolate from");

  // Row pass: lower envelope of the parabolas (x - c)^2 + g_c^2 under the
  // order (distance, source row, column). For columns j < k, k wins at x
  // exactly on a half line [T, inf) with an integer threshold T.
  std::vector<std::size_t> out(mask.size());
  std::vector<std::int64_t> cols(static_cast<std::size_t>(w));
  std::vector<std::int64_t> starts(static_cast<std::size_t>(w));
  for (int y = 0; y < h; ++y) {
    const auto row_at = [&](std::int64_t c) { return row_of[mask.index(static_cast<int>(c), y)]; };
    const auto gap2 = [&](std::int64_t c) {
      const std::int64_t g = row_at(c) - y;
      return g * g;
    };
    const auto threshold = [&](std::int64_t j, std::int64_t k) {
      const std::int64_t num = k * k - j * j + gap2(k) - gap2(j);
      const std::int64_t den = 2 * (k - j);
      std::int64_t q = num / den;
      if (num % den != 0 && num < 0) --q;  // floor
      const bool exact = q * den == num;
      return exact && row_at(k) < row_at(j) ? q : q + 1;
    };
    std::size_t top = 0;  // stack size
    for (std::int64_t c = 0; c < w; ++c) {
      if (row_at(c) == kNoRow) continue;
      std::int64_t start = std::numeric_limits<std::int64_t>::min();
      while (top > 0) {
        start = threshold(cols[top - 1], c);
        if (start > starts[top - 1]) break;
        --top;
        start = std::numeric_limits<std::int64_t>::min();
      }
      cols[top] = c;
      starts[top] = start;
      ++top;
    }
    std::size_t s = 0;
    for (std::int64_t x = 0; x < w; ++x) {
      while (s + 1 < top && starts[s + 1] <= x) ++s;
      const std::int64_t c = cols[s];
      out[mask.index(static_cast<int>(x), y)] = mask.index(static_cast<int>(c),
                                                           static_cast<int>(row_at(c)));
    }
  }
  return out;
}

DepthFrame densify_nn(const DepthFrame& sparse) {
  const std::vector<std::size_t> nearest = nearest_valid_index(sparse.valid());
  DepthFrame out(sparse.width(), sparse.height(), sparse.range());
  for (std::size_t i = 0; i < sparse.size(); ++i) out.set_index(i, sparse.depth_at(nearest[i]));
  return out;
}

DepthFrame densify_nn(const DepthPrompt& prompt) { return densify_nn(prompt.depth); }

RgbImage fill_nearest_color(const RgbImage& rgb, const Mask& valid) {
  require_same_size(rgb, valid, "color and mask rasters differ in size");
  const std::vector<std::size_t> nearest = nearest_valid_index(valid);
  RgbImage out(rgb.width(), rgb.height());
  for (std::size_t i = 0; i < rgb.size(); ++i) out[i] = rgb[nearest[i]];
  return out;
}

DepthFrame apply_sky(const DepthFrame& depth, const Mask& sky_mask, double sky_depth) {
  require_same_size(depth.depth(), sky_mask, "sky mask and depth differ in size");
  const auto d = static_cast<float>(sky_depth);
  if (!depth.range().contains(d)) {
    throw Error(ErrorCode::kInvalidArgument, "sky depth lies outside the depth range");
  }
  DepthFrame out = depth;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (sky_mask[i]) out.set_index(i, d);
  }
  return out;
}

DepthFrame MedianBackend::complete(const DensifyRequest& request) const {
  const DepthFrame& init = request.initial;
  DepthFrame out = init;
  std::array<float, 9> window;
  for (int y = 0; y < init.height(); ++y) {
    for (int x = 0; x < init.width(); ++x) {
      if (request.prompt.source(x, y) == PromptSource::kLidar) continue;
      std::size_t n = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = x + dx;
          const int yy = y + dy;
          if (init.depth().contains(xx, yy) && init.valid(xx, yy)) window[n++] = init.depth(xx, yy);
        }
      }
      if (n == 0) continue;
      const auto mid = window.begin() + static_cast<std::ptrdiff_t>((n - 1) / 2);
      std::nth_element(window.begin(), mid, window.begin() + static_cast<std::ptrdiff_t>(n));
      out.set(x, y, *mid);
    }
  }
  return out;
}

DepthFrame ExternalProcessBackend::complete(const DensifyRequest& request) const {
  const fs::path dir = io::make_scratch_dir("stgeo-backend-");
  const fs::path rgb = dir / "rgb.png";
  const fs::path prompt = dir / "prompt.pfm";
  const fs::path tags = dir / "tags.png";
  const fs::path out = dir / "out.pfm";
  try {
    io::write_png_rgb(rgb, request.rgb);
    io::write_pfm(prompt, request.prompt.depth);
    Raster<std::uint8_t> raw(request.prompt.source.width(), request.prompt.source.height());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      raw[i] = static_cast<std::uint8_t>(request.prompt.source[i]);
    }
    io::write_png_gray8(tags, raw);
    io::run_command(io::expand_command(command_, {{"rgb", rgb.string()},
                                          {"prompt", prompt.string()},
                                          {"tags", tags.string()},
                                          {"out", out.string()}}));
    DepthFrame result = io::read_pfm(out, request.prompt.depth.range());
    fs::remove_all(dir);
    return result;
  } catch (...) {
    std::error_code ec;
    fs::remove_all(dir, ec);
    throw;
  }
}

void check_densifier_contract(const DepthPrompt& prompt, const DepthFrame& dense,
                              double tolerance) {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kDensifierContractViolation, what);
  };
  if (dense.width() != prompt.depth.width() || dense.height() != prompt.depth.height()) {
    fail("dense output has the wrong size");
  }
  if (dense.valid_count() != dense.size()) fail("dense output has invalid pixels");
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (prompt.source[i] != PromptSource::kLidar) continue;
    const double diff = std::abs(static_cast<double>(dense.depth_at(i)) - prompt.depth.depth_at(i));
    if (!(diff <= tolerance)) {
      fail("output departs from the lidar prompt by " + std::to_string(diff) + " m");
    }
  }
}

namespace {

template <typename F>
auto run_stage(const char* name, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

bool flagged(const Mask& mask, int x, int y) { return !mask.empty() && mask(x, y) != 0; }

void check_camera(const CameraInput& cam) {
  cam.k.validate();
  const auto check = [&](int w, int h, const char* what) {
    if (w != cam.k.width || h != cam.k.height) throw Error(ErrorCode::kSizeMismatch, what);
  };
  if (!cam.rgb.empty()) check(cam.rgb.width(), cam.rgb.height(), "rgb does not match intrinsics");
  if (!cam.sky.empty()) check(cam.sky.width(), cam.sky.height(), "sky mask does not match intrinsics");
  if (!cam.exclusion.empty()) {
    check(cam.exclusion.width(), cam.exclusion.height(), "exclusion mask does not match intrinsics");
  }
}

// Drops MVS points that land on a sky or exclusion pixel of any camera.
PointCloud semantic_filter(const PointCloud& cloud, std::span<const CameraInput> cameras) {
  std::vector<std::size_t> keep;
  keep.reserve(cloud.size());
  std::vector<Pose> world_to_cam;
  for (const CameraInput& cam : cameras) {
    check_camera(cam);
    world_to_cam.push_back(cam.pose.inverse());
  }
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    bool drop = false;
    for (std::size_t c = 0; c < cameras.size() && !drop; ++c) {
      const Vec3 p = world_to_cam[c] * cloud.position(i);
      if (!(p.z() > 0.0)) continue;
      const PixelDepth px = project(p, cameras[c].k);
      const int x = pixel_index(px.u);
      const int y = pixel_index(px.v);
      if (x < 0 || y < 0 || x >= cameras[c].k.width || y >= cameras[c].k.height) continue;
      drop = flagged(cameras[c].sky, x, y) || flagged(cameras[c].exclusion, x, y);
    }
    if (!drop) keep.push_back(i);
  }
  return cloud.subset(keep);
}

}  // namespace

PointCloud curation_cloud(std::span<const FrameInput> frames, int t, const CurationConfig& config) {
  if (t < 0 || static_cast<std::size_t>(t) >= frames.size()) {
    throw StageError("aggregate", Error(ErrorCode::kOffsetOutOfRange, "frame index out of range"));
  }
  const FrameInput& frame = frames[static_cast<std::size_t>(t)];

  const int half = config.lidar_window / 2;
  const int lo = std::max(0, t - half);
  const int hi = std::min(static_cast<int>(frames.size()) - 1, t + half);
  std::vector<PointCloud> clouds;
  std::vector<RelativeTransform> egos;
  run_stage("remove_dynamic", [&] {
    for (int s = lo; s <= hi; ++s) {
      const FrameInput& f = frames[static_cast<std::size_t>(s)];
      clouds.push_back(remove_dynamic(f.lidar, f.boxes, config.box_margin));
      egos.push_back(f.ego);
    }
    return 0;
  });
  const PointCloud lidar = run_stage("aggregate", [&] {
    return transform(aggregate_frames(clouds, egos, t - lo, config.lidar_window), frame.ego);
  });

  const PointCloud mvs_high = run_stage("mvs_height", [&] {
    const PointCloud ego = transform(frame.mvs, frame.ego.inverse());
    return transform(filter_above_height(ego, config.mvs_min_height), frame.ego);
  });
  const PointCloud mvs =
      run_stage("mvs_semantic", [&] { return semantic_filter(mvs_high, frame.cameras); });

  return run_stage("voxel", [&] {
    // Each source is thinned separately so no voxel mixes lidar and mvs tags.
    PointCloud merged = voxel_downsample(lidar, config.voxel_resolution);
    merged.append(voxel_downsample(mvs, config.voxel_resolution));
    return merged;
  });
}

CuratedView curate_view(const PointCloud& cloud, const CameraInput& camera,
                        const CurationConfig& config, const DensifierBackend& backend, int frame,
                        int camera_index) {
  run_stage("input", [&] {
    check_camera(camera);
    config.range.validate();
    return 0;
  });
  const Intrinsics& k = camera.k;
  const PointCloud visible = run_stage("hpr", [&] {
    const Pose world_to_cam = camera.pose.inverse();
    std::vector<std::size_t> in_view;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const Vec3 p = world_to_cam * cloud.position(i);
      if (!config.range.contains(p.z())) continue;
      const PixelDepth px = project(p, k);
      const int x = pixel_index(px.u);
      const int y = pixel_index(px.v);
      if (x >= 0 && y >= 0 && x < k.width && y < k.height) in_view.push_back(i);
    }
    const PointCloud culled = cloud.subset(in_view);
    if (culled.empty()) return culled;
    const std::vector<std::size_t> keep =
        hidden_point_removal(culled, camera.pose.translation(), config.hpr_gamma);
    return culled.subset(keep);
  });

  CuratedView view;
  view.prompt = run_stage("fuse", [&] {
    std::vector<std::size_t> lidar_idx;
    std::vector<std::size_t> mvs_idx;
    for (std::size_t i = 0; i < visible.size(); ++i) {
      (visible.source(i) == Source::kLidar ? lidar_idx : mvs_idx).push_back(i);
    }
    return fuse_depth(visible.subset(lidar_idx), visible.subset(mvs_idx), camera.pose, k,
                      config.lidar_priority_radius, config.range);
  });
  view.initial = run_stage("densify_nn", [&] { return densify_nn(view.prompt); });
  const DepthFrame completed = run_stage("backend", [&] {
    const RgbImage blank(k.width, k.height);
    const DensifyRequest request{camera.rgb.empty() ? blank : camera.rgb,
                                 view.prompt,
                                 view.initial,
                                 camera.pose,
                                 k,
                                 frame,
                                 camera_index};
    DepthFrame out = backend.complete(request);
    check_densifier_contract(view.prompt, out, backend.tolerance());
    return out;
  });
  view.dense = run_stage("sky", [&] {
    if (camera.sky.empty()) return completed;
    return apply_sky(completed, camera.sky, config.sky_depth);
  });
  return view;
}

std::vector<CuratedView> curate(std::span<const FrameInput> frames, int t,
                                const CurationConfig& config, const DensifierBackend& backend) {
  const PointCloud cloud = curation_cloud(frames, t, config);
  const FrameInput& frame = frames[static_cast<std::size_t>(t)];
  std::vector<CuratedView> views;
  views.reserve(frame.cameras.size());
  for (std::size_t c = 0; c < frame.cameras.size(); ++c) {
    views.push_back(curate_view(cloud, frame.cameras[c], config, backend, t, static_cast<int>(c)));
  }
  return views;
}

}  // namespace stgeo
