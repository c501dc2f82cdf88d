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

#include "stgeo/oracle.hpp"

namespace stgeo {

namespace {

DepthFrame fill_invalid(const DepthFrame& depth) {
  DepthFrame out = depth;
  const auto max = static_cast<float>(depth.range().max);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out.valid_at(i)) out.set_index(i, max);
  }
  return out;
}

}  // namespace

DepthFrame oracle_depth(const synth::SynthScene& scene, const Pose& cam, const Intrinsics& k,
                        const DepthRange& range) {
  return fill_invalid(synth::raycast_depth(scene, cam, k, range).depth);
}

DepthFrame oracle_curated_depth(const synth::SynthScene& scene, const Pose& cam,
                                const Intrinsics& k, const DepthRange& range, double sky_depth) {
  const synth::RaycastResult ray = synth::raycast_depth(scene, cam, k, range);
  return apply_sky(fill_invalid(ray.depth), ray.sky, sky_depth);
}

DepthFrame RaycastBackend::complete(const DensifyRequest& request) const {
  return oracle_depth(scene_at_(request.frame), request.cam, request.k,
                      request.prompt.depth.range());
}

DenseView RaycastViewDensifier::complete(const ViewRequest& request) const {
  synth::RaycastResult ray =
      synth::raycast_depth(scene_, request.pose, request.k, request.condition.depth.range());
  return {std::move(ray.rgb), fill_invalid(ray.depth)};
}

}  // namespace stgeo
