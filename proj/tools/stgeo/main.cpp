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

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdio>
#include <exception>

#include "commands.hpp"
#include "stgeo/error.hpp"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitStage = 2;

bool is_input_code(stgeo::ErrorCode code) {
  using stgeo::ErrorCode;
  return code == ErrorCode::kInvalidArgument || code == ErrorCode::kIo ||
         code == ErrorCode::kFormat;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace stgeo::cli;

  CLI::App app{"Spatio-temporal geometry pipeline for driving video data"};
  app.set_version_flag("--version", STGEO_VERSION_STRING);
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions common;
  std::uint64_t seed = 0;
  std::string log_level = "info";
  app.add_option("-j,--jobs", common.jobs, "Worker threads")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Override the configured seed");
  app.add_option("--config", common.config, "Pipeline config (YAML)")->check(CLI::ExistingFile);
  app.add_option("-o,--out", common.out, "Output directory");
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth-scene", "Generate the synthetic driving dataset");
  synth_cmd->add_option("--frames", synth.frames);
  synth_cmd->add_option("--cameras", synth.cameras);
  synth_cmd->add_option("--width", synth.width);
  synth_cmd->add_option("--height", synth.height);
  synth_cmd->add_option("--mvs-stride", synth.mvs_stride);
  synth_cmd->add_option("--lidar-beams", synth.lidar_beams);
  synth_cmd->add_option("--lidar-azimuths", synth.lidar_azimuths);

  CurateOptions curate;
  auto* curate_cmd = app.add_subcommand("curate-depth", "Curate dense depth per camera");
  curate_cmd->add_option("--data", curate.data, "Dataset directory")->required();
  curate_cmd->add_option("--frames", curate.frames)->delimiter(',');
  curate_cmd->add_option("--backend", curate.backend)
      ->check(CLI::IsMember({"nn-median", "oracle", "external"}));
  curate_cmd->add_option("--backend-cmd", curate.backend_cmd,
                         "Command with {rgb} {prompt} {tags} {out} placeholders");
  curate_cmd->add_option("--backend-tolerance", curate.backend_tolerance,
                         "Relative tolerance on lidar pixels");

  RenderOptions render;
  auto* render_cmd = app.add_subcommand("render-condition", "Render conditioning frames");
  render_cmd->add_option("--data", render.data)->required();
  render_cmd->add_option("--depth-dir", render.depth_dir, "Curated depth (default: dataset depth)");
  render_cmd->add_option("--frames", render.frames)->delimiter(',');
  render_cmd->add_option("--offsets", render.offsets)->delimiter(',');
  render_cmd->add_option("--shifts", render.shifts, "Lateral shifts in meters")->delimiter(',');
  render_cmd->add_flag("--augment", render.augment, "Add voxelized augmentation offsets");

  TrajectoryOptions traj;
  auto* traj_cmd = app.add_subcommand("gen-trajectory", "Perturb a trajectory laterally");
  traj_cmd->add_option("--trajectory", traj.trajectory)->required()->check(CLI::ExistingFile);
  traj_cmd->add_option("--tau-min", traj.tau_min);
  traj_cmd->add_option("--tau-max", traj.tau_max);
  traj_cmd->add_option("--mode", traj.mode)->check(CLI::IsMember({"per_frame", "per_trajectory"}));

  SccOptions scc;
  auto* scc_cmd = app.add_subcommand("scc-roundtrip", "Build self-consistent training pairs");
  scc_cmd->add_option("--data", scc.data)->required();
  scc_cmd->add_option("--frames", scc.frames)->delimiter(',');
  scc_cmd->add_option("--cameras", scc.cameras)->delimiter(',');
  auto* shift_opt = scc_cmd->add_option("--shift", scc.shift, "Constant lateral shift (m)");
  scc_cmd->add_option("--trajectory", scc.trajectory, "Novel ego trajectory")
      ->check(CLI::ExistingFile)
      ->excludes(shift_opt);
  scc_cmd->add_option("--densifier", scc.densifier)
      ->check(CLI::IsMember({"nn", "oracle", "stub", "external"}));
  scc_cmd->add_option("--densifier-cmd", scc.densifier_cmd,
                      "Command with {rgb} {depth} {mask} {out_rgb} {out_depth} placeholders");
  scc_cmd->add_option("--densifier-tolerance", scc.densifier_tolerance);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval-depth", "Depth metrics against ground truth");
  eval_cmd->add_option("--pred", eval.pred, "PFM file or directory")->required();
  eval_cmd->add_option("--gt", eval.gt, "PFM file or directory")->required();
  eval_cmd->add_option("--pattern", eval.pattern, "File name matched below directories");
  eval_cmd->add_option("--scaling", eval.scaling)->check(CLI::IsMember({"none", "median", "both"}));
  eval_cmd->add_option("--aggregation", eval.aggregation)
      ->check(CLI::IsMember({"pooled", "frame-mean"}));
  eval_cmd->add_option("--min", eval.min, "Lower bound on gt (exclusive, m)");
  eval_cmd->add_option("--max", eval.max, "Upper bound on gt (inclusive, m)");

  DensifyOptions densify;
  auto* densify_cmd = app.add_subcommand("densify", "Reference external completion backend");
  densify_cmd->add_option("--rgb", densify.rgb)->required();
  densify_cmd->add_option("--prompt", densify.prompt)->required();
  densify_cmd->add_option("--tags", densify.tags)->required();
  densify_cmd->add_option("--result", densify.result)->required();

  DensifyViewOptions densify_view;
  auto* densify_view_cmd =
      app.add_subcommand("densify-view", "Reference external view densifier");
  densify_view_cmd->add_option("--rgb", densify_view.rgb)->required();
  densify_view_cmd->add_option("--depth", densify_view.depth)->required();
  densify_view_cmd->add_option("--mask", densify_view.mask)->required();
  densify_view_cmd->add_option("--result-rgb", densify_view.result_rgb)->required();
  densify_view_cmd->add_option("--result-depth", densify_view.result_depth)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  auto logger = spdlog::stderr_color_mt("stgeo");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::from_str(log_level));
  if (*seed_opt) common.seed = seed;

  try {
    if (*synth_cmd) run_synth_scene(common, synth);
    else if (*curate_cmd) run_curate_depth(common, curate);
    else if (*render_cmd) run_render_condition(common, render);
    else if (*traj_cmd) run_gen_trajectory(common, traj);
    else if (*scc_cmd) run_scc_roundtrip(common, scc);
    else if (*eval_cmd) run_eval_depth(common, eval);
    else if (*densify_cmd) run_densify(densify);
    else if (*densify_view_cmd) run_densify_view(densify_view);
  } catch (const InputError& e) {
    spdlog::error("{}", e.what());
    return kExitInput;
  } catch (const stgeo::StageError& e) {
    spdlog::error("stage {} failed: {}", e.stage(), e.what());
    return kExitStage;
  } catch (const stgeo::Error& e) {
    spdlog::error("{}", e.what());
    return is_input_code(e.code()) ? kExitInput : kExitStage;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitStage;
  }
  return 0;
}
