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
//
// Ray-cast stand-ins for the completion seams, used as ground truth.

#ifndef STGEO_ORACLE_HPP
#define STGEO_ORACLE_HPP

#include <functional>
#include <limits>
#include <string>

#include "stgeo/curation.hpp"
#include "stgeo/nvs.hpp"
#include "stgeo/synth.hpp"

namespace stgeo {

/// Ray-cast depth with every invalid pixel (miss or out of range) set to
/// range.max, so the result is valid everywhere.
DepthFrame oracle_depth(const synth::SynthScene& scene, const Pose& cam, const Intrinsics& k,
                        const DepthRange& range = {});

/// oracle_depth followed by the sky override on the ray-cast misses.
DepthFrame oracle_curated_depth(const synth::SynthScene& scene, const Pose& cam,
                                const Intrinsics& k, const DepthRange& range = {},
                                double sky_depth = kDefaultSkyDepth);

/// Completion backend answering with the analytic depth of the scene at
/// the request's frame. Ignores the prompt entirely.
class RaycastBackend final : public DensifierBackend {
 public:
  using SceneAt = std::function<const synth::SynthScene&(int frame)>;
  explicit RaycastBackend(SceneAt scene_at) : scene_at_(std::move(scene_at)) {}
  std::string name() const override { return "oracle"; }
  DepthFrame complete(const DensifyRequest& request) const override;
  double tolerance() const override { return std::numeric_limits<double>::infinity(); }

 private:
  SceneAt scene_at_;
};

/// View densifier answering with the analytic RGB-D of the scene.
class RaycastViewDensifier final : public ViewDensifier {
 public:
  explicit RaycastViewDensifier(synth::SynthScene scene) : scene_(std::move(scene)) {}
  std::string name() const override { return "oracle"; }
  DenseView complete(const ViewRequest& request) const override;
  double tolerance() const override { return std::numeric_limits<double>::infinity(); }

 private:
  synth::SynthScene scene_;
};

}  // namespace stgeo

#endif  // STGEO_ORACLE_HPP
