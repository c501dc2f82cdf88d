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

#ifndef STGEO_HULL_HPP
#define STGEO_HULL_HPP

#include <array>
#include <span>
#include <vector>

#include "stgeo/geometry.hpp"

namespace stgeo {

/// Sign of det[b - a, c - a, d - a]: +1 when d lies on the side of the
/// plane (a, b, c) that (b - a) x (c - a) points to, -1 on the other side,
/// 0 when coplanar. Exact for all finite double inputs: a floating-point
/// filter with a static error bound, falling back to rational arithmetic.
int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// Exact collinearity test for three points.
bool collinear3d(const Vec3& a, const Vec3& b, const Vec3& c);

struct HullFace {
  std::array<int, 3> v;  // outward-facing (counter-clockwise seen from outside)
};

struct ConvexHull {
  std::vector<HullFace> faces;
  /// is_vertex[i] is true when input point i is a corner of the hull.
  std::vector<bool> is_vertex;
};

/// 3D convex hull by an incremental (quickhull-order) construction using
/// exact orientation predicates. Points on a face but not at a corner are
/// not reported as vertices; every copy of a duplicated corner is. Throws
/// kDegenerateCloud when all points are coplanar.
ConvexHull convex_hull(std::span<const Vec3> points);

}  // namespace stgeo

#endif  // STGEO_HULL_HPP
