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

#include "commands.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <memory>

#include "manifest.hpp"
#include "stgeo/curation.hpp"
#include "stgeo/dataset.hpp"
#include "stgeo/error.hpp"
#include "stgeo/fixture.hpp"
#include "stgeo/io.hpp"
#include "stgeo/metrics.hpp"
#include "stgeo/nvs.hpp"
#include "stgeo/oracle.hpp"
#include "stgeo/parallel.hpp"

namespace stgeo::cli {

namespace fs = std::filesystem;

namespace {

fs::path require_out(const CommonOptions& common) {
  if (common.out.empty()) throw InputError("--out is required");
  return common.out;
}

// Errors raised while reading user input are input errors, whatever the code.
template <typename F>
auto load(const std::string& what, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw InputError(what + ": " + e.what());
  } catch (const fs::filesystem_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

template <typename F>
auto stage(const char* name, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

std::vector<int> resolve_frames(const std::vector<int>& requested, int count) {
  if (requested.empty()) {
    std::vector<int> all(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) all[static_cast<std::size_t>(t)] = t;
    return all;
  }
  for (const int t : requested) {
    if (t < 0 || t >= count) throw InputError("frame " + std::to_string(t) + " is out of range");
  }
  return requested;
}

std::string signed_label(double v, const char* fmt) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

PipelineConfig load_config(const CommonOptions& common) {
  PipelineConfig config;
  if (!common.config.empty()) {
    config = load("config", [&] { return PipelineConfig::load(common.config); });
  }
  if (common.seed) config.seed = *common.seed;
  load("config", [&] {
    config.validate();
    return 0;
  });
  return config;
}

void run_synth_scene(const CommonOptions& common, const SynthOptions& opt) {
  const PipelineConfig config = load_config(common);
  const fs::path out = require_out(common);
  fixture::DrivingSpec spec;
  spec.frames = opt.frames;
  spec.cameras = opt.cameras;
  spec.width = opt.width;
  spec.height = opt.height;
  spec.mvs_stride = opt.mvs_stride;
  spec.lidar_beams = opt.lidar_beams;
  spec.lidar_azimuths = opt.lidar_azimuths;
  spec.seed = config.seed;
  spec.range = config.range;
  if (spec.frames <= 0 || spec.cameras <= 0 || spec.width <= 1 || spec.height <= 1 ||
      spec.lidar_beams <= 0 || spec.lidar_azimuths <= 0 || spec.mvs_stride <= 0) {
    throw InputError("fixture sizes must be positive");
  }
  spdlog::info("synthesizing {} frames x {} cameras at {}x{}", spec.frames, spec.cameras,
               spec.width, spec.height);
  const fixture::DrivingFixture fx = stage("synth", [&] { return fixture::make_driving(spec); });
  stage("write", [&] {
    io::write_dataset(out, fx);
    return 0;
  });
  Manifest manifest("synth-scene", config);
  manifest.argument("frames", spec.frames);
  manifest.argument("cameras", spec.cameras);
  manifest.argument("width", spec.width);
  manifest.argument("height", spec.height);
  manifest.argument("mvs_stride", spec.mvs_stride);
  manifest.argument("lidar_beams", spec.lidar_beams);
  manifest.argument("lidar_azimuths", spec.lidar_azimuths);
  manifest.write(out);
}

void run_curate_depth(const CommonOptions& common, const CurateOptions& opt) {
  const PipelineConfig config = load_config(common);
  const fs::path out = require_out(common);
  const io::Dataset ds = load("dataset", [&] { return io::read_dataset(opt.data, false); });
  const std::vector<int> frames = resolve_frames(opt.frames, ds.frames());

  std::unique_ptr<DensifierBackend> backend;
  if (opt.backend == "nn-median") {
    backend = std::make_unique<MedianBackend>();
  } else if (opt.backend == "oracle") {
    for (const int t : frames) load("dataset", [&] { return &ds.scene(t); });
    backend = std::make_unique<RaycastBackend>(
        [&ds](int t) -> const synth::SynthScene& { return ds.scene(t); });
  } else if (opt.backend == "external") {
    if (opt.backend_cmd.empty()) throw InputError("--backend external needs --backend-cmd");
    backend = std::make_unique<ExternalProcessBackend>(opt.backend_cmd, opt.backend_tolerance);
  } else {
    throw InputError("unknown backend '" + opt.backend + "'");
  }

  const CurationConfig cc = config.curation();
  std::vector<PointCloud> clouds(frames.size());
  parallel_for(frames.size(), common.jobs, [&](std::size_t i) {
    clouds[i] = curation_cloud(ds.inputs, frames[i], cc);
  });
  const std::size_t cams = ds.cameras();
  const int jobs = backend->thread_safe() ? common.jobs : 1;
  parallel_for(frames.size() * cams, jobs, [&](std::size_t j) {
    const int t = frames[j / cams];
    const std::size_t c = j % cams;
    const CuratedView view = curate_view(clouds[j / cams], ds.inputs[static_cast<std::size_t>(t)].cameras[c],
                                         cc, *backend, t, static_cast<int>(c));
    stage("write", [&] {
      const fs::path dir = io::camera_dir(out, t, c);
      io::write_pfm(dir / "depth.pfm", view.dense);
      io::write_depth_png16(dir / "depth_mm.png", view.dense);
      io::write_pfm(dir / "prompt.pfm", view.prompt.depth);
      Raster<std::uint8_t> tags(view.prompt.source.width(), view.prompt.source.height());
      for (std::size_t i = 0; i < tags.size(); ++i) {
        tags[i] = static_cast<std::uint8_t>(view.prompt.source[i]);
      }
      io::write_png_gray8(dir / "tags.png", tags);
      return 0;
    });
    spdlog::debug("curated frame {} camera {}", t, c);
  });
  spdlog::info("curated {} frames x {} cameras with backend '{}'", frames.size(), cams,
               backend->name());

  Manifest manifest("curate-depth", config);
  manifest.argument("frames", frames);
  manifest.argument("backend", opt.backend);
  if (!opt.backend_cmd.empty()) manifest.argument("backend_cmd", opt.backend_cmd);
  manifest.input(opt.data);
  manifest.write(out);
}

namespace {

// Frames t and t + n filled, the rest left empty; enough for
// condition_at_offset, which touches no other entry.
std::vector<SurroundFrame> sparse_sequence(const io::Dataset& ds, int t, int n) {
  std::vector<SurroundFrame> seq(static_cast<std::size_t>(ds.frames()));
  seq[static_cast<std::size_t>(t)] = ds.surround(t);
  seq[static_cast<std::size_t>(t + n)] = ds.surround(t + n);
  return seq;
}

void write_condition(const fs::path& dir, const ConditionFrame& cond) {
  io::write_png_rgb(dir / "cond_rgb.png", cond.rgb);
  io::write_pfm(dir / "cond_depth.pfm", cond.depth);
  io::write_mask_png(dir / "cond_mask.png", cond.valid());
}

}  // namespace

void run_render_condition(const CommonOptions& common, const RenderOptions& opt) {
  const PipelineConfig config = load_config(common);
  const fs::path out = require_out(common);
  io::Dataset ds = load("dataset", [&] { return io::read_dataset(opt.data, opt.depth_dir.empty()); });
  if (!opt.depth_dir.empty()) {
    load("depth", [&] {
      for (int t = 0; t < ds.frames(); ++t) {
        auto& frame = ds.depth[static_cast<std::size_t>(t)];
        frame.clear();
        for (std::size_t c = 0; c < ds.cameras(); ++c) {
          const fs::path p = io::camera_dir(opt.depth_dir, t, c) / "depth.pfm";
          if (fs::exists(p)) frame.push_back(io::read_pfm(p, config.range));
        }
      }
      return 0;
    });
  }

  struct Task {
    std::string label;
    int t;
    int n;            // frame offset, offset mode
    double shift;     // meters, shift mode
    bool lateral;
    double voxel;
  };
  std::vector<Task> tasks;
  const auto add_offsets = [&](const std::vector<int>& offsets, const char* prefix, double voxel) {
    for (const int n : offsets) {
      const std::string label = prefix + signed_label(n, "%+.0f");
      if (opt.frames.empty()) {
        for (int t = 0; t < ds.frames(); ++t) {
          if (t + n >= 0 && t + n < ds.frames()) tasks.push_back({label, t, n, 0.0, false, voxel});
        }
      } else {
        for (const int t : resolve_frames(opt.frames, ds.frames())) {
          if (t + n < 0 || t + n >= ds.frames()) {
            throw InputError("frame " + std::to_string(t) + " offset " + std::to_string(n) +
                             " leaves the sequence");
          }
          tasks.push_back({label, t, n, 0.0, false, voxel});
        }
      }
    }
  };
  if (!opt.shifts.empty()) {
    for (const double s : opt.shifts) {
      for (const int t : resolve_frames(opt.frames, ds.frames())) {
        tasks.push_back({"shift_" + signed_label(s, "%+.3f"), t, 0, s, true, 0.0});
      }
    }
  } else {
    add_offsets(opt.offsets.empty() ? config.offsets : opt.offsets, "offset_", 0.0);
    if (opt.augment) add_offsets(config.augmentation_offsets, "aug_offset_", config.voxel_resolution);
  }

  parallel_for(tasks.size(), common.jobs, [&](std::size_t i) {
    const Task& task = tasks[i];
    const fs::path base = out / task.label;
    stage("render", [&] {
      if (task.lateral) {
        const SurroundFrame frame = ds.surround(task.t);
        const Pose& ego = ds.inputs[static_cast<std::size_t>(task.t)].ego;
        for (std::size_t c = 0; c < frame.size(); ++c) {
          const Pose target = shift_laterally(frame[c].pose, ego, task.shift);
          write_condition(io::camera_dir(base, task.t, c),
                          condition_at_view(frame, target, ds.k, config.range));
        }
      } else {
        const auto seq = sparse_sequence(ds, task.t, task.n);
        const auto conds = condition_at_offset(seq, task.t, task.n, config.range, task.voxel);
        for (std::size_t c = 0; c < conds.size(); ++c) {
          write_condition(io::camera_dir(base, task.t, c), conds[c]);
        }
      }
      return 0;
    });
  });
  spdlog::info("rendered {} condition sets", tasks.size());

  Manifest manifest("render-condition", config);
  manifest.argument("frames", opt.frames);
  manifest.argument("offsets", opt.offsets);
  manifest.argument("shifts", opt.shifts);
  manifest.argument("augment", opt.augment);
  manifest.input(opt.data);
  if (!opt.depth_dir.empty()) manifest.input(opt.depth_dir);
  manifest.write(out);
}

namespace {

TauMode parse_mode(const std::string& mode, TauMode fallback) {
  if (mode.empty()) return fallback;
  if (mode == "per_frame") return TauMode::kPerFrame;
  if (mode == "per_trajectory") return TauMode::kPerTrajectory;
  throw InputError("unknown tau mode '" + mode + "'");
}

}  // namespace

void run_gen_trajectory(const CommonOptions& common, const TrajectoryOptions& opt) {
  const PipelineConfig config = load_config(common);
  const fs::path out = require_out(common);
  const Trajectory input =
      load("trajectory", [&] { return io::trajectory_from_json(io::read_json(opt.trajectory)); });
  const double lo = opt.tau_min.value_or(config.tau_min);
  const double hi = opt.tau_max.value_or(config.tau_max);
  const TauMode mode = parse_mode(opt.mode, config.tau_mode);
  const PerturbedTrajectory p =
      load("tau range", [&] { return perturb_trajectory(input, config.seed, lo, hi, mode); });
  io::write_json(out / "trajectory.json", io::trajectory_to_json(p.trajectory));
  io::write_json(out / "tau.json",
                 {{"seed", config.seed},
                  {"mode", mode == TauMode::kPerFrame ? "per_frame" : "per_trajectory"},
                  {"tau_min_m", lo},
                  {"tau_max_m", hi},
                  {"tau_m", p.tau}});
  Manifest manifest("gen-trajectory", config);
  manifest.argument("tau_min_m", lo);
  manifest.argument("tau_max_m", hi);
  manifest.input(opt.trajectory);
  manifest.write(out);
}

void run_scc_roundtrip(const CommonOptions& common, const SccOptions& opt) {
  const PipelineConfig config = load_config(common);
  const fs::path out = require_out(common);
  const io::Dataset ds = load("dataset", [&] { return io::read_dataset(opt.data, true); });
  const std::vector<int> frames = resolve_frames(opt.frames, ds.frames());
  std::vector<std::size_t> cams;
  if (opt.cameras.empty()) {
    for (std::size_t c = 0; c < ds.cameras(); ++c) cams.push_back(c);
  } else {
    for (const int c : opt.cameras) {
      if (c < 0 || static_cast<std::size_t>(c) >= ds.cameras()) {
        throw InputError("camera " + std::to_string(c) + " is out of range");
      }
      cams.push_back(static_cast<std::size_t>(c));
    }
  }

  // Novel camera pose per (frame, camera), plus the lateral offset when known.
  std::vector<std::optional<double>> tau(static_cast<std::size_t>(ds.frames()));
  std::optional<Trajectory> novel_egos;
  if (!opt.trajectory.empty()) {
    novel_egos = load("trajectory", [&] { return io::trajectory_from_json(io::read_json(opt.trajectory)); });
    if (novel_egos->egos.size() != static_cast<std::size_t>(ds.frames())) {
      throw InputError("novel trajectory length differs from the sequence");
    }
  } else if (opt.shift) {
    std::fill(tau.begin(), tau.end(), *opt.shift);
  } else {
    Trajectory traj;
    for (const FrameInput& in : ds.inputs) traj.egos.push_back(in.ego);
    const PerturbedTrajectory p =
        perturb_trajectory(traj, config.seed, config.tau_min, config.tau_max, config.tau_mode);
    for (std::size_t t = 0; t < tau.size(); ++t) tau[t] = p.tau[t];
  }
  const auto novel_pose = [&](int t, std::size_t c) {
    const FrameInput& in = ds.inputs[static_cast<std::size_t>(t)];
    if (novel_egos) {
      return novel_egos->egos[static_cast<std::size_t>(t)] * in.ego.inverse() * in.cameras[c].pose;
    }
    return shift_laterally(in.cameras[c].pose, in.ego, *tau[static_cast<std::size_t>(t)]);
  };

  const auto make_densifier = [&](int t) -> std::unique_ptr<ViewDensifier> {
    if (opt.densifier == "nn") return std::make_unique<NnViewDensifier>();
    if (opt.densifier == "stub") return std::make_unique<HolePreservingDensifier>();
    if (opt.densifier == "oracle") return std::make_unique<RaycastViewDensifier>(ds.scene(t));
    if (opt.densifier == "external") {
      return std::make_unique<ExternalViewDensifier>(opt.densifier_cmd, opt.densifier_tolerance);
    }
    throw InputError("unknown densifier '" + opt.densifier + "'");
  };
  if (opt.densifier == "external" && opt.densifier_cmd.empty()) {
    throw InputError("--densifier external needs --densifier-cmd");
  }
  for (const int t : frames) load("densifier", [&] { return make_densifier(t); });

  const std::size_t n = frames.size() * cams.size();
  std::vector<nlohmann::json> rows(n);
  parallel_for(n, common.jobs, [&](std::size_t j) {
    const int t = frames[j / cams.size()];
    const std::size_t c = cams[j % cams.size()];
    const auto densifier = make_densifier(t);
    const Pose novel = novel_pose(t, c);
    const SccResult r = stage("scc", [&] {
      return scc_roundtrip(ds.surround(t), c, novel, *densifier, config.range);
    });
    const auto& cam = ds.inputs[static_cast<std::size_t>(t)].cameras[c];
    nlohmann::json meta = {{"original_pose", io::to_json(cam.pose)},
                           {"novel_pose", io::to_json(novel)},
                           {"offset_frames", 0},
                           {"densifier", densifier->name()}};
    meta["tau_m"] = tau[static_cast<std::size_t>(t)] ? nlohmann::json(*tau[static_cast<std::size_t>(t)])
                                                     : nlohmann::json(nullptr);
    stage("write", [&] {
      write_training_pair(out / "pairs", t, c, r, meta);
      return 0;
    });
    rows[j] = {{"frame", t},
               {"camera", c},
               {"tau_m", meta["tau_m"]},
               {"rgb_mae", r.residuals.rgb_mae},
               {"depth_median_abs_m", r.residuals.depth_median_abs},
               {"n_pixels", r.residuals.n_pixels}};
  });
  io::write_json(out / "summary.json", {{"densifier", opt.densifier}, {"pairs", rows}});
  spdlog::info("wrote {} training pairs", n);

  Manifest manifest("scc-roundtrip", config);
  manifest.argument("frames", frames);
  manifest.argument("densifier", opt.densifier);
  if (opt.shift) manifest.argument("shift_m", *opt.shift);
  manifest.input(opt.data);
  if (!opt.trajectory.empty()) manifest.input(opt.trajectory);
  manifest.write(out);
}

namespace {

// Raw PFM values; a pixel counts when it is finite and positive.
DepthMap read_depth_map(const fs::path& path) {
  const Raster<float> raw = io::decode_pfm(io::read_file(path));
  DepthMap m;
  m.width = raw.width();
  m.height = raw.height();
  m.depth.resize(raw.size());
  m.valid.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    m.depth[i] = raw[i];
    m.valid[i] = std::isfinite(raw[i]) && raw[i] > 0.0f ? 1 : 0;
  }
  return m;
}

}  // namespace

void run_eval_depth(const CommonOptions& common, const EvalOptions& opt) {
  const PipelineConfig config = load_config(common);
  EvalRange range = config.eval_range;
  if (opt.min) range.min = *opt.min;
  if (opt.max) range.max = *opt.max;
  if (!(range.min >= 0.0) || !(range.max > range.min)) throw InputError("bad evaluation range");

  std::vector<Scaling> scalings;
  if (opt.scaling == "none" || opt.scaling == "both") scalings.push_back(Scaling::kNone);
  if (opt.scaling == "median" || opt.scaling == "both") scalings.push_back(Scaling::kMedian);
  if (scalings.empty()) throw InputError("unknown scaling '" + opt.scaling + "'");
  Aggregation aggregation;
  if (opt.aggregation == "pooled") aggregation = Aggregation::kPixelPooled;
  else if (opt.aggregation == "frame-mean") aggregation = Aggregation::kFrameMean;
  else throw InputError("unknown aggregation '" + opt.aggregation + "'");

  std::vector<std::string> names;
  std::vector<DepthMap> preds;
  std::vector<DepthMap> gts;
  load("depth maps", [&] {
    if (fs::is_directory(opt.gt)) {
      std::vector<fs::path> rel;
      for (const auto& e : fs::recursive_directory_iterator(opt.gt)) {
        if (e.is_regular_file() && e.path().filename() == opt.pattern) {
          rel.push_back(fs::relative(e.path(), opt.gt));
        }
      }
      std::sort(rel.begin(), rel.end());
      if (rel.empty()) throw Error(ErrorCode::kIo, "no '" + opt.pattern + "' below " + opt.gt);
      for (const fs::path& r : rel) {
        names.push_back(r.string());
        gts.push_back(read_depth_map(fs::path(opt.gt) / r));
        preds.push_back(read_depth_map(fs::path(opt.pred) / r));
      }
    } else {
      names.push_back(fs::path(opt.gt).filename().string());
      gts.push_back(read_depth_map(opt.gt));
      preds.push_back(read_depth_map(opt.pred));
    }
    return 0;
  });

  std::vector<DepthEvalReport> aggregates;
  nlohmann::json reports = nlohmann::json::array();
  for (const Scaling s : scalings) {
    const SequenceReport r =
        stage("eval", [&] { return eval_sequence(preds, gts, range, s, aggregation); });
    aggregates.push_back(r.aggregate);
    nlohmann::json per_frame = nlohmann::json::array();
    for (const DepthEvalReport& f : r.per_frame) per_frame.push_back(to_json(f));
    reports.push_back({{"aggregate", to_json(r.aggregate)}, {"per_frame", per_frame}});
  }
  std::fputs(format_table(aggregates).c_str(), stdout);

  if (!common.out.empty()) {
    const fs::path out = common.out;
    io::write_json(out / "report.json", {{"aggregation", opt.aggregation},
                                         {"range", {range.min, range.max}},
                                         {"files", names},
                                         {"reports", reports}});
    Manifest manifest("eval-depth", config);
    manifest.argument("scaling", opt.scaling);
    manifest.argument("aggregation", opt.aggregation);
    manifest.input(opt.pred);
    manifest.input(opt.gt);
    manifest.write(out);
  }
}

void run_densify(const DensifyOptions& opt) {
  DepthPrompt prompt;
  RgbImage rgb;
  load("backend inputs", [&] {
    rgb = io::read_png_rgb(opt.rgb);
    prompt.depth = io::read_pfm(opt.prompt);
    const Raster<std::uint8_t> tags = io::read_png_gray8(opt.tags);
    require_same_size(tags, prompt.depth.depth(), "tags and prompt differ in size");
    prompt.source = Raster<PromptSource>(tags.width(), tags.height());
    for (std::size_t i = 0; i < tags.size(); ++i) {
      if (tags[i] > 2) throw Error(ErrorCode::kFormat, "unknown source tag");
      prompt.source[i] = static_cast<PromptSource>(tags[i]);
    }
    return 0;
  });
  const DepthFrame dense = stage("densify", [&] {
    const DepthFrame initial = densify_nn(prompt);
    const Pose cam;
    const Intrinsics k{1.0, 1.0, prompt.depth.width() / 2.0, prompt.depth.height() / 2.0,
                       prompt.depth.width(), prompt.depth.height()};
    return MedianBackend().complete({rgb, prompt, initial, cam, k, 0, 0});
  });
  io::write_pfm(opt.result, dense);
}

void run_densify_view(const DensifyViewOptions& opt) {
  ConditionFrame cond;
  load("densifier inputs", [&] {
    cond.rgb = io::read_png_rgb(opt.rgb);
    cond.depth = io::read_pfm(opt.depth);
    const Mask mask = io::read_mask_png(opt.mask);
    require_same_size(mask, cond.depth.depth(), "mask and depth differ in size");
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (!mask[i]) cond.depth.set_index(i, 0.0f);
    }
    return 0;
  });
  const DenseView dense = stage("densify", [&] {
    const Pose cam;
    const Intrinsics k{1.0, 1.0, cond.depth.width() / 2.0, cond.depth.height() / 2.0,
                       cond.depth.width(), cond.depth.height()};
    return NnViewDensifier().complete({cond, cam, k});
  });
  io::write_png_rgb(opt.result_rgb, dense.rgb);
  io::write_pfm(opt.result_depth, dense.depth);
}

}  // namespace stgeo::cli
