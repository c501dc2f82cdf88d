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

#include "stgeo/fixture.hpp"

#include <cmath>
#include <numbers>

#include "stgeo/rng.hpp"

namespace stgeo::fixture {

namespace {

using synth::Box;
using synth::ColorFn;
using synth::Plane;
using synth::Primitive;
using synth::Sphere;

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kCameraRadius = 0.5;  // rig radius around the LiDAR, meters
constexpr double kCameraDrop = 0.24;   // cameras sit below the LiDAR, meters
constexpr double kLidarMaxRange = 100.0;
constexpr int kCarClass = 1;

const Vec3 kCarSize(4.0, 1.8, 1.5);

Vec3 car_center(int t) { return {10.0 + 1.5 * t, 3.5, 0.75}; }

}  // namespace

synth::SynthScene corridor_scene() {
  synth::SynthScene scene;
  const auto checker = [](Rgb a, Rgb b) { return ColorFn::checker(a, b); };
  scene.primitives.push_back(
      {Plane{Vec3(8, 0, 0), Vec3::UnitZ(), Vec3::UnitX(), 80.0, 8.0},
       checker({90, 90, 90}, {150, 150, 150})});
  scene.primitives.push_back(
      {Plane{Vec3(8, 8, 3), -Vec3::UnitY(), Vec3::UnitX(), 80.0, 3.0},
       checker({180, 120, 80}, {120, 70, 40})});
  scene.primitives.push_back(
      {Plane{Vec3(8, -8, 3), Vec3::UnitY(), Vec3::UnitX(), 80.0, 3.0},
       checker({80, 140, 180}, {40, 80, 120})});
  scene.primitives.push_back({Box{Vec3(12, 4.5, 0), Vec3(16, 7.5, 2.5)},
                              checker({200, 200, 60}, {120, 120, 30})});
  scene.primitives.push_back({Box{Vec3(25, -7.5, 0), Vec3(30, -3.5, 3.5)},
                              checker({60, 200, 60}, {30, 110, 30})});
  scene.primitives.push_back({Box{Vec3(-14, -7, 0), Vec3(-9, -4, 4)},
                              checker({200, 60, 200}, {110, 30, 110})});
  scene.primitives.push_back({Sphere{Vec3(20, -5, 1.5), 1.2}, checker({240, 240, 240}, {20, 20, 20})});
  scene.primitives.push_back({Sphere{Vec3(45, 4, 4.0), 1.5}, checker({250, 160, 0}, {120, 60, 0})});
  return scene;
}

Trajectory DrivingFixture::trajectory() const {
  Trajectory traj;
  for (const FrameInput& f : inputs) traj.egos.push_back(f.ego);
  return traj;
}

SurroundFrame DrivingFixture::surround(int t) const {
  SurroundFrame frame;
  const auto& cams = inputs[static_cast<std::size_t>(t)].cameras;
  for (std::size_t c = 0; c < cams.size(); ++c) {
    const synth::RaycastResult& v = views[static_cast<std::size_t>(t)][c];
    frame.push_back({v.rgb, v.depth, cams[c].pose, k});
  }
  return frame;
}

DrivingFixture make_driving(const DrivingSpec& spec) {
  DrivingFixture fx;
  fx.spec = spec;
  const double f = 0.8 * spec.width;
  fx.k = Intrinsics{f, f, spec.width / 2.0, spec.height / 2.0, spec.width, spec.height};
  fx.k.validate();
  for (int c = 0; c < spec.cameras; ++c) {
    const double yaw = 2.0 * std::numbers::pi * c / spec.cameras;
    fx.camera_to_ego.emplace_back(
        camera_to_ego_rotation(yaw),
        Vec3(kCameraRadius * std::cos(yaw), kCameraRadius * std::sin(yaw), -kCameraDrop));
  }

  const synth::SynthScene base = corridor_scene();
  fx.static_primitives = base.primitives.size();

  for (int t = 0; t < spec.frames; ++t) {
    synth::SynthScene scene = base;
    const Vec3 car = car_center(t);
    scene.primitives.push_back({Box{car - 0.5 * kCarSize, car + 0.5 * kCarSize},
                                ColorFn::constant({220, 30, 30})});

    FrameInput in;
    in.ego = Pose::translation_only(Vec3(spec.speed * t, 0.0, spec.lidar_height));
    const Pose world_to_ego = in.ego.inverse();
    in.boxes.push_back(BBox3D::from_center(world_to_ego * car, kCarSize, 0.0, kCarClass));

    // Spinning LiDAR; the azimuth phase is jittered per frame.
    CounterRng rng(spec.seed, static_cast<std::uint64_t>(t));
    const double phase = rng.uniform();
    in.lidar = PointCloud(true, false);
    for (int b = 0; b < spec.lidar_beams; ++b) {
      const double elev =
          (-30.0 + 40.0 * b / std::max(1, spec.lidar_beams - 1)) * kDeg;
      for (int a = 0; a < spec.lidar_azimuths; ++a) {
        const double az = 2.0 * std::numbers::pi * (a + phase) / spec.lidar_azimuths;
        const Vec3 dir(std::cos(elev) * std::cos(az), std::cos(elev) * std::sin(az),
                       std::sin(elev));
        const auto hit = synth::cast_ray(scene, in.ego.translation(), in.ego.rotation() * dir);
        if (!hit || hit->s > kLidarMaxRange) continue;
        in.lidar.add(hit->s * dir, Source::kLidar, hit->color);
      }
    }

    in.mvs = PointCloud(true, false);
    std::vector<synth::RaycastResult> views;
    for (int c = 0; c < spec.cameras; ++c) {
      CameraInput cam;
      cam.pose = in.ego * fx.camera_to_ego[static_cast<std::size_t>(c)];
      cam.k = fx.k;
      synth::RaycastResult ray = synth::raycast_depth(scene, cam.pose, fx.k, spec.range);
      cam.rgb = ray.rgb;
      cam.sky = ray.sky;
      cam.exclusion = Mask(spec.width, spec.height, 0);
      for (std::size_t i = 0; i < ray.primitive.size(); ++i) {
        if (ray.primitive[i] >= static_cast<std::int32_t>(fx.static_primitives)) {
          cam.exclusion[i] = 1;
        }
      }
      const int s = std::max(1, spec.mvs_stride);
      for (int y = s / 2; y < spec.height; y += s) {
        for (int x = s / 2; x < spec.width; x += s) {
          if (!ray.depth.valid(x, y)) continue;
          in.mvs.add(cam.pose * unproject(x, y, ray.depth.depth(x, y), fx.k), Source::kMvs,
                     ray.rgb(x, y));
        }
      }
      in.cameras.push_back(std::move(cam));
      views.push_back(std::move(ray));
    }

    ScriptFrame sf;
    sf.index = t;
    sf.ego = in.ego;
    sf.boxes = in.boxes;
    for (const CameraInput& cam : in.cameras) sf.cameras.push_back(cam.pose);
    // Bird's-eye layout around the ego, 1 m cells: road and walls.
    sf.map.width = 32;
    sf.map.height = 32;
    sf.map.layers = 2;
    sf.map.bits.assign(2 * 32 * 32, 0);
    for (int r = 0; r < 32; ++r) {
      const double y = 16.0 - r - 0.5;
      for (int col = 0; col < 32; ++col) {
        const std::size_t cell = static_cast<std::size_t>(r) * 32 + col;
        if (std::abs(y) < 8.0) sf.map.bits[cell] = 1;
        if (std::abs(std::abs(y) - 8.0) < 0.5) sf.map.bits[32 * 32 + cell] = 1;
      }
    }

    fx.scenes.push_back(std::move(scene));
    fx.inputs.push_back(std::move(in));
    fx.views.push_back(std::move(views));
    fx.script.frames.push_back(std::move(sf));
  }
  return fx;
}

}  // namespace stgeo::fixture
