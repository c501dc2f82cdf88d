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
// Analytic scenes with exact ray casting. These are the ground truth the
// rest of the library is tested against, so they favour closed forms over
// speed.
//
// Depth produced here is camera-frame z (the same convention as
// unproject), not the Euclidean length of the ray.

#ifndef STGEO_SYNTH_HPP
#define STGEO_SYNTH_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "stgeo/geometry.hpp"
#include "stgeo/pointcloud.hpp"
#include "stgeo/raster.hpp"

namespace stgeo::synth {

inline constexpr double kDefaultCheckerPeriod = 1.0;
inline constexpr Rgb kSkyColor{135, 206, 235};

struct ColorFn {
  enum class Kind { kConstant, kChecker };
  Kind kind = Kind::kConstant;
  Rgb a{200, 200, 200};
  Rgb b{60, 60, 60};
  double period = kDefaultCheckerPeriod;

  static ColorFn constant(Rgb c) { return {Kind::kConstant, c, c, kDefaultCheckerPeriod}; }
  static ColorFn checker(Rgb a, Rgb b, double period = kDefaultCheckerPeriod) {
    return {Kind::kChecker, a, b, period};
  }

  /// Evaluated on primitive-local texture coordinates.
  Rgb at(const Vec3& tex) const;
};

/// Plane through `point` with unit `normal`. Bounded to a rectangle when the
/// half extents along `u_axis` and normal x u_axis are finite.
struct Plane {
  Vec3 point;
  Vec3 normal;
  Vec3 u_axis;
  double half_u = std::numeric_limits<double>::infinity();
  double half_v = std::numeric_limits<double>::infinity();

  Vec3 v_axis() const { return normal.cross(u_axis); }
  bool bounded() const { return std::isfinite(half_u) && std::isfinite(half_v); }

  /// Picks a deterministic in-plane u axis.
  static Plane make(const Vec3& point, const Vec3& normal,
                    double half_u = std::numeric_limits<double>::infinity(),
                    double half_v = std::numeric_limits<double>::infinity());
};

struct Sphere {
  Vec3 center;
  double radius = 1.0;
};

/// Axis-aligned box.
struct Box {
  Vec3 min;
  Vec3 max;
};

using Shape = std::variant<Plane, Sphere, Box>;

struct Primitive {
  Shape shape;
  ColorFn color;
};

struct SynthScene {
  std::vector<Primitive> primitives;

  /// Throws kInvalidArgument for non-finite parameters, radius <= 0,
  /// min >= max on a box, or a non-unit plane normal.
  void validate() const;
};

struct Hit {
  double s = 0.0;  // ray parameter: hit = origin + s * dir
  Rgb color;
  std::size_t primitive = 0;
};

/// Nearest intersection with s > 0 along origin + s * dir.
std::optional<Hit> cast_ray(const SynthScene& scene, const Vec3& origin, const Vec3& dir);

/// Per-primitive intersection, exposed for brute-force checks.
std::optional<double> intersect(const Shape& shape, const Vec3& origin, const Vec3& dir);

struct RaycastResult {
  RgbImage rgb;
  DepthFrame depth;
  Mask sky;  // 1 where the pixel ray escapes the scene
  Raster<std::int32_t> primitive;  // index of the hit primitive, -1 for sky
};

/// Per pixel, the nearest positive hit along the pinhole ray through the
/// pixel center; depth is the camera-frame z of the hit. Hits outside
/// `range` and sky pixels are invalid.
RaycastResult raycast_depth(const SynthScene& scene, const Pose& cam, const Intrinsics& k,
                            const DepthRange& range = {});

/// Uniform surface samples of every bounded primitive: about density * area
/// points each (density in points per m^2). Unbounded planes are skipped.
PointCloud sample_cloud(const SynthScene& scene, double density, std::uint64_t seed,
                        Source tag = Source::kRendered);

}  // namespace stgeo::synth

#endif  // STGEO_SYNTH_HPP
