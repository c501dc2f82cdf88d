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

#include "stgeo/synth.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "stgeo/error.hpp"
#include "stgeo/rng.hpp"

namespace stgeo::synth {

Rgb ColorFn::at(const Vec3& tex) const {
  if (kind == Kind::kConstant) return a;
  const auto cell = [&](double c) { return static_cast<std::int64_t>(std::floor(c / period)); };
  const std::int64_t parity = cell(tex.x()) + cell(tex.y()) + cell(tex.z());
  return (parity & 1) == 0 ? a : b;
}

Plane Plane::make(const Vec3& point, const Vec3& normal, double half_u, double half_v) {
  const Vec3 n = normal.normalized();
  const Vec3 helper = std::abs(n.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  const Vec3 u = helper.cross(n).normalized();
  return Plane{point, n, u, half_u, half_v};
}

void SynthScene::validate() const {
  const auto fail = [](const char* what) { throw Error(ErrorCode::kInvalidArgument, what); };
  for (const Primitive& prim : primitives) {
    if (!(prim.color.period > 0.0)) fail("checker period must be positive");
    if (const auto* plane = std::get_if<Plane>(&prim.shape)) {
      if (!plane->point.allFinite() || !plane->normal.allFinite() || !plane->u_axis.allFinite()) {
        fail("plane parameters must be finite");
      }
      if (std::abs(plane->normal.norm() - 1.0) > 1e-9 ||
          std::abs(plane->u_axis.norm() - 1.0) > 1e-9 ||
          std::abs(plane->normal.dot(plane->u_axis)) > 1e-9) {
        fail("plane normal and u axis must be orthonormal");
      }
      if (!(plane->half_u > 0.0) || !(plane->half_v > 0.0)) fail("plane extents must be positive");
    } else if (const auto* sphere = std::get_if<Sphere>(&prim.shape)) {
      if (!sphere->center.allFinite() || !std::isfinite(sphere->radius)) {
        fail("sphere parameters must be finite");
      }
      if (!(sphere->radius > 0.0)) fail("sphere radius must be positive");
    } else {
      const auto& box = std::get<Box>(prim.shape);
      if (!box.min.allFinite() || !box.max.allFinite()) fail("box corners must be finite");
      if (!(box.min.array() < box.max.array()).all()) fail("box min must be below max");
    }
  }
}

namespace {

struct LocalHit {
  double s;
  Vec3 tex;
};

std::optional<LocalHit> hit_plane(const Plane& plane, const Vec3& o, const Vec3& d) {
  const double denom = plane.normal.dot(d);
  if (denom == 0.0) return std::nullopt;
  const double s = plane.normal.dot(plane.point - o) / denom;
  if (!(s > 0.0)) return std::nullopt;
  const Vec3 rel = o + s * d - plane.point;
  const double a = rel.dot(plane.u_axis);
  const double b = rel.dot(plane.v_axis());
  if (std::abs(a) > plane.half_u || std::abs(b) > plane.half_v) return std::nullopt;
  return LocalHit{s, Vec3(a, b, 0.0)};
}

std::optional<LocalHit> hit_sphere(const Sphere& sphere, const Vec3& o, const Vec3& d) {
  const Vec3 oc = o - sphere.center;
  const double a = d.dot(d);
  const double b = 2.0 * d.dot(oc);
  const double c = oc.dot(oc) - sphere.radius * sphere.radius;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  double s = (-b - root) / (2.0 * a);
  if (!(s > 0.0)) s = (-b + root) / (2.0 * a);
  if (!(s > 0.0)) return std::nullopt;
  return LocalHit{s, o + s * d};
}

std::optional<LocalHit> hit_box(const Box& box, const Vec3& o, const Vec3& d) {
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  int near_axis = -1;
  int far_axis = -1;
  for (int i = 0; i < 3; ++i) {
    if (d[i] == 0.0) {
      if (o[i] < box.min[i] || o[i] > box.max[i]) return std::nullopt;
      continue;
    }
    double t1 = (box.min[i] - o[i]) / d[i];
    double t2 = (box.max[i] - o[i]) / d[i];
    if (t1 > t2) std::swap(t1, t2);
    if (t1 > t_near) t_near = t1, near_axis = i;
    if (t2 < t_far) t_far = t2, far_axis = i;
  }
  if (t_near > t_far || !(t_far > 0.0)) return std::nullopt;
  const bool entering = t_near > 0.0;
  const double s = entering ? t_near : t_far;
  const int axis = entering ? near_axis : far_axis;
  const Vec3 p = o + s * d;
  Vec3 tex = p;
  tex[axis] = 0.0;
  return LocalHit{s, tex};
}

std::optional<LocalHit> hit_shape(const Shape& shape, const Vec3& o, const Vec3& d) {
  return std::visit(
      [&](const auto& s) -> std::optional<LocalHit> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Plane>) return hit_plane(s, o, d);
        else if constexpr (std::is_same_v<T, Sphere>) return hit_sphere(s, o, d);
        else return hit_box(s, o, d);
      },
      shape);
}

}  // namespace

std::optional<double> intersect(const Shape& shape, const Vec3& origin, const Vec3& dir) {
  const auto h = hit_shape(shape, origin, dir);
  if (!h) return std::nullopt;
  return h->s;
}

std::optional<Hit> cast_ray(const SynthScene& scene, const Vec3& origin, const Vec3& dir) {
  std::optional<Hit> best;
  for (std::size_t i = 0; i < scene.primitives.size(); ++i) {
    const auto h = hit_shape(scene.primitives[i].shape, origin, dir);
    if (h && (!best || h->s < best->s)) {
      best = Hit{h->s, scene.primitives[i].color.at(h->tex), i};
    }
  }
  return best;
}

RaycastResult raycast_depth(const SynthScene& scene, const Pose& cam, const Intrinsics& k,
                            const DepthRange& range) {
  k.validate();
  RaycastResult out{RgbImage(k.width, k.height, kSkyColor), DepthFrame(k.width, k.height, range),
                    Mask(k.width, k.height, 0), Raster<std::int32_t>(k.width, k.height, -1)};
  const Vec3 origin = cam.translation();
  for (int y = 0; y < k.height; ++y) {
    for (int x = 0; x < k.width; ++x) {
      // Camera-frame direction with unit z, so the ray parameter is z-depth.
      const Vec3 dir_cam((x - k.cx) / k.fx, (y - k.cy) / k.fy, 1.0);
      const auto hit = cast_ray(scene, origin, cam.rotation() * dir_cam);
      if (!hit) {
        out.sky(x, y) = 1;
        continue;
      }
      out.rgb(x, y) = hit->color;
      out.primitive(x, y) = static_cast<std::int32_t>(hit->primitive);
      out.depth.set(x, y, static_cast<float>(hit->s));
    }
  }
  return out;
}

namespace {

void sample_rect(const Vec3& center, const Vec3& u, const Vec3& v, double half_u, double half_v,
                 const ColorFn& color, double density, CounterRng& rng, Source tag,
                 PointCloud& out, const std::function<Vec3(const Vec3&)>& tex_of) {
  const double area = 4.0 * half_u * half_v;
  const auto count = static_cast<std::size_t>(std::floor(density * area + rng.uniform()));
  for (std::size_t i = 0; i < count; ++i) {
    const double a = rng.uniform(-half_u, half_u);
    const double b = rng.uniform(-half_v, half_v);
    const Vec3 p = center + a * u + b * v;
    out.add(p, tag, color.at(tex_of(p)));
  }
}

}  // namespace

PointCloud sample_cloud(const SynthScene& scene, double density, std::uint64_t seed, Source tag) {
  if (!(density >= 0.0) || !std::isfinite(density)) {
    throw Error(ErrorCode::kInvalidArgument, "sampling density must be finite and >= 0");
  }
  scene.validate();
  PointCloud out(true, false);
  for (std::size_t idx = 0; idx < scene.primitives.size(); ++idx) {
    const Primitive& prim = scene.primitives[idx];
    CounterRng rng(seed, idx);
    if (const auto* plane = std::get_if<Plane>(&prim.shape)) {
      if (!plane->bounded()) continue;
      const Vec3 u = plane->u_axis;
      const Vec3 v = plane->v_axis();
      const Vec3 origin = plane->point;
      sample_rect(origin, u, v, plane->half_u, plane->half_v, prim.color, density, rng, tag, out,
                  [&](const Vec3& p) {
                    const Vec3 rel = p - origin;
                    return Vec3(rel.dot(u), rel.dot(v), 0.0);
                  });
    } else if (const auto* sphere = std::get_if<Sphere>(&prim.shape)) {
      const double area = 4.0 * std::numbers::pi * sphere->radius * sphere->radius;
      const auto count = static_cast<std::size_t>(std::floor(density * area + rng.uniform()));
      for (std::size_t i = 0; i < count; ++i) {
        const double z = rng.uniform(-1.0, 1.0);
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const Vec3 p = sphere->center + sphere->radius * Vec3(r * std::cos(phi), r * std::sin(phi), z);
        out.add(p, tag, prim.color.at(p));
      }
    } else {
      const auto& box = std::get<Box>(prim.shape);
      const Vec3 half = 0.5 * (box.max - box.min);
      const Vec3 mid = 0.5 * (box.max + box.min);
      for (int axis = 0; axis < 3; ++axis) {
        const int ia = (axis + 1) % 3;
        const int ib = (axis + 2) % 3;
        for (const double side : {-1.0, 1.0}) {
          Vec3 center = mid;
          center[axis] = side < 0 ? box.min[axis] : box.max[axis];
          sample_rect(center, Vec3::Unit(ia), Vec3::Unit(ib), half[ia], half[ib], prim.color,
                      density, rng, tag, out, [axis](const Vec3& p) {
                        Vec3 tex = p;
                        tex[axis] = 0.0;
                        return tex;
                      });
        }
      }
    }
  }
  return out;
}

}  // namespace stgeo::synth
