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

#ifndef STGEO_TOOLS_COMMANDS_HPP
#define STGEO_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stgeo/config.hpp"

namespace stgeo::cli {

/// Raised for bad user input; maps to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  int jobs = 1;
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string out;
};

PipelineConfig load_config(const CommonOptions& common);

struct SynthOptions {
  int frames = 17;
  int cameras = 6;
  int width = 800;
  int height = 424;
  int mvs_stride = 4;
  int lidar_beams = 32;
  int lidar_azimuths = 1024;
};
void run_synth_scene(const CommonOptions& common, const SynthOptions& opt);

struct CurateOptions {
  std::string data;
  std::vector<int> frames;
  std::string backend = "nn-median";
  std::string backend_cmd;
  double backend_tolerance = 0.0;
};
void run_curate_depth(const CommonOptions& common, const CurateOptions& opt);

struct RenderOptions {
  std::string data;
  std::string depth_dir;
  std::vector<int> frames;
  std::vector<int> offsets;
  std::vector<double> shifts;
  bool augment = false;
};
void run_render_condition(const CommonOptions& common, const RenderOptions& opt);

struct TrajectoryOptions {
  std::string trajectory;
  std::optional<double> tau_min;
  std::optional<double> tau_max;
  std::string mode;
};
void run_gen_trajectory(const CommonOptions& common, const TrajectoryOptions& opt);

struct SccOptions {
  std::string data;
  std::vector<int> frames;
  std::vector<int> cameras;
  std::optional<double> shift;
  std::string trajectory;
  std::string densifier = "nn";
  std::string densifier_cmd;
  double densifier_tolerance = 0.0;
};
void run_scc_roundtrip(const CommonOptions& common, const SccOptions& opt);

struct EvalOptions {
  std::string pred;
  std::string gt;
  std::string pattern = "depth.pfm";
  std::string scaling = "both";
  std::string aggregation = "pooled";
  std::optional<double> min;
  std::optional<double> max;
};
void run_eval_depth(const CommonOptions& common, const EvalOptions& opt);

struct DensifyOptions {
  std::string rgb;
  std::string prompt;
  std::string tags;
  std::string result;
};
/// Reference external completion backend (NN fill plus median pass).
void run_densify(const DensifyOptions& opt);

struct DensifyViewOptions {
  std::string rgb;
  std::string depth;
  std::string mask;
  std::string result_rgb;
  std::string result_depth;
};
/// Reference external view densifier (NN fill of depth and color).
void run_densify_view(const DensifyViewOptions& opt);

}  // namespace stgeo::cli

#endif  // STGEO_TOOLS_COMMANDS_HPP
