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

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "stgeo/curation.hpp"
#include "stgeo/pointcloud.hpp"
#include "stgeo/render.hpp"
#include "stgeo/rng.hpp"

namespace stgeo {
namespace {

const Intrinsics kCam{400, 400, 399.5, 211.5, 800, 424};

PointCloud frustum_cloud(std::size_t n) {
  CounterRng rng(7, 0);
  PointCloud cloud(true, false);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = rng.uniform(1.0, 80.0);
    const double u = rng.uniform(0.0, kCam.width - 1.0);
    const double v = rng.uniform(0.0, kCam.height - 1.0);
    cloud.add(unproject(u, v, z, kCam), Source::kLidar,
              Rgb{static_cast<std::uint8_t>(i), 0, static_cast<std::uint8_t>(i >> 8)});
  }
  return cloud;
}

PointCloud sphere_cloud(std::size_t n) {
  CounterRng rng(11, 0);
  PointCloud cloud(true, false);
  for (std::size_t i = 0; i < n; ++i) {
    const double zc = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(1.0 - zc * zc);
    cloud.add(Vec3(r * std::cos(phi), r * std::sin(phi), zc + 8.0) * 2.0, Source::kLidar);
  }
  return cloud;
}

void BM_Splat(benchmark::State& state) {
  const PointCloud cloud = frustum_cloud(static_cast<std::size_t>(state.range(0)));
  const Pose cam;
  for (auto _ : state) benchmark::DoNotOptimize(splat(cloud, cam, kCam));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Splat)->Arg(10000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_HiddenPointRemoval(benchmark::State& state) {
  const PointCloud cloud = sphere_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hidden_point_removal(cloud, Vec3::Zero()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HiddenPointRemoval)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_VoxelDownsample(benchmark::State& state) {
  const PointCloud cloud = frustum_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(voxel_downsample(cloud, 0.1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VoxelDownsample)->Arg(10000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_DensifyNearest(benchmark::State& state) {
  const double density = 1.0 / static_cast<double>(state.range(0));
  CounterRng rng(3, 0);
  DepthFrame sparse(kCam.width, kCam.height);
  for (int y = 0; y < kCam.height; ++y) {
    for (int x = 0; x < kCam.width; ++x) {
      if (rng.uniform() < density) sparse.set(x, y, static_cast<float>(rng.uniform(1.0, 80.0)));
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(densify_nn(sparse));
}
BENCHMARK(BM_DensifyNearest)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace stgeo

BENCHMARK_MAIN();
