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

#include "stgeo/hull.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "stgeo/error.hpp"

namespace stgeo {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational exact(double x) {
  if (x == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  BigInt num(scaled);
  if (exponent >= 0) return Rational(num << exponent);
  return Rational(num, BigInt(1) << -exponent);
}

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

struct ExactVec {
  Rational x, y, z;
};

ExactVec exact_diff(const Vec3& a, const Vec3& b) {
  return {exact(a.x()) - exact(b.x()), exact(a.y()) - exact(b.y()), exact(a.z()) - exact(b.z())};
}

int orient3d_exact(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const ExactVec u = exact_diff(b, a);
  const ExactVec v = exact_diff(c, a);
  const ExactVec w = exact_diff(d, a);
  const Rational det = u.x * (v.y * w.z - v.z * w.y) - u.y * (v.x * w.z - v.z * w.x) +
                       u.z * (v.x * w.y - v.y * w.x);
  return sign_of(det);
}

// Error bound of the straightforward orient3d evaluation (Shewchuk 1997).
constexpr double kEpsilon = 0x1p-53;
constexpr double kOrient3dErrBound = (7.0 + 56.0 * kEpsilon) * kEpsilon;

}  // namespace

int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const double adx = a.x() - d.x(), bdx = b.x() - d.x(), cdx = c.x() - d.x();
  const double ady = a.y() - d.y(), bdy = b.y() - d.y(), cdy = c.y() - d.y();
  const double adz = a.z() - d.z(), bdz = b.z() - d.z(), cdz = c.z() - d.z();

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;

  // det[a-d, b-d, c-d], which is the negation of det[b-a, c-a, d-a].
  const double det =
      adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * std::abs(adz) +
                           (std::abs(cdxady) + std::abs(adxcdy)) * std::abs(bdz) +
                           (std::abs(adxbdy) + std::abs(bdxady)) * std::abs(cdz);
  const double bound = kOrient3dErrBound * permanent;
  if (det > bound) return -1;
  if (-det > bound) return 1;
  return orient3d_exact(a, b, c, d);
}

bool collinear3d(const Vec3& a, const Vec3& b, const Vec3& c) {
  const ExactVec u = exact_diff(b, a);
  const ExactVec v = exact_diff(c, a);
  return u.y * v.z - u.z * v.y == 0 && u.z * v.x - u.x * v.z == 0 && u.x * v.y - u.y * v.x == 0;
}

namespace {

struct Face {
  std::array<int, 3> v;
  std::array<int, 3> nb;  // nb[i] shares edge (v[i], v[(i + 1) % 3])
  std::vector<int> outside;
  bool alive = true;
  std::uint32_t visit = 0;
};

class QuickHull {
 public:
  explicit QuickHull(std::span<const Vec3> pts) : pts_(pts) {}

  ConvexHull run() {
    const std::vector<int> unique = unique_points();
    if (unique.size() < 4) {
      throw Error(ErrorCode::kDegenerateCloud, "fewer than four distinct points");
    }
    build_simplex(unique);
    expand();
    return collect();
  }

 private:
  const Vec3& p(int i) const { return pts_[static_cast<std::size_t>(i)]; }

  int above(const Face& f, int i) const { return orient3d(p(f.v[0]), p(f.v[1]), p(f.v[2]), p(i)); }

  // Representatives of the distinct coordinates (the lowest index of each).
  std::vector<int> unique_points() {
    const int n = static_cast<int>(pts_.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](int i) { return std::make_tuple(p(i).x(), p(i).y(), p(i).z()); };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return key(a) != key(b) ? key(a) < key(b) : a < b;
    });
    rep_.assign(n, -1);
    std::vector<int> unique;
    for (int k = 0; k < n; ++k) {
      if (k > 0 && key(order[k]) == key(order[k - 1])) {
        rep_[order[k]] = rep_[order[k - 1]];
      } else {
        rep_[order[k]] = order[k];
        unique.push_back(order[k]);
      }
    }
    std::sort(unique.begin(), unique.end());
    return unique;
  }

  void build_simplex(const std::vector<int>& ids) {
    // i0: lexicographically smallest point, i1: farthest from it.
    const int i0 = *std::min_element(ids.begin(), ids.end(), [&](int a, int b) {
      return std::make_tuple(p(a).x(), p(a).y(), p(a).z()) <
             std::make_tuple(p(b).x(), p(b).y(), p(b).z());
    });
    int i1 = -1;
    double best = -1.0;
    for (int i : ids) {
      const double d = (p(i) - p(i0)).squaredNorm();
      if (d > best) best = d, i1 = i;
    }

    int i2 = -1;
    best = -1.0;
    const Vec3 axis = p(i1) - p(i0);
    for (int i : ids) {
      const double d = axis.cross(p(i) - p(i0)).squaredNorm();
      if (d > best) best = d, i2 = i;
    }
    if (collinear3d(p(i0), p(i1), p(i2))) {
      i2 = -1;
      for (int i : ids) {
        if (!collinear3d(p(i0), p(i1), p(i))) {
          i2 = i;
          break;
        }
      }
      if (i2 < 0) throw Error(ErrorCode::kDegenerateCloud, "all points are collinear");
    }

    int i3 = -1;
    best = -1.0;
    const Vec3 normal = axis.cross(p(i2) - p(i0));
    for (int i : ids) {
      const double d = std::abs(normal.dot(p(i) - p(i0)));
      if (d > best) best = d, i3 = i;
    }
    if (orient3d(p(i0), p(i1), p(i2), p(i3)) == 0) {
      i3 = -1;
      for (int i : ids) {
        if (orient3d(p(i0), p(i1), p(i2), p(i)) != 0) {
          i3 = i;
          break;
        }
      }
      if (i3 < 0) throw Error(ErrorCode::kDegenerateCloud, "all points are coplanar");
    }

    const std::array<int, 4> s = {i0, i1, i2, i3};
    static constexpr int kTri[4][3] = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    static constexpr int kOpposite[4] = {3, 2, 1, 0};
    for (int f = 0; f < 4; ++f) {
      Face face;
      face.v = {s[kTri[f][0]], s[kTri[f][1]], s[kTri[f][2]]};
      if (above(face, s[kOpposite[f]]) > 0) std::swap(face.v[1], face.v[2]);
      faces_.push_back(std::move(face));
    }
    std::map<std::pair<int, int>, int> edge_owner;
    for (int f = 0; f < 4; ++f) {
      for (int e = 0; e < 3; ++e) edge_owner[{faces_[f].v[e], faces_[f].v[(e + 1) % 3]}] = f;
    }
    for (int f = 0; f < 4; ++f) {
      for (int e = 0; e < 3; ++e) {
        faces_[f].nb[e] = edge_owner.at({faces_[f].v[(e + 1) % 3], faces_[f].v[e]});
      }
    }

    for (int i : ids) {
      if (i == i0 || i == i1 || i == i2 || i == i3) continue;
      for (int f = 0; f < 4; ++f) {
        if (above(faces_[f], i) > 0) {
          faces_[f].outside.push_back(i);
          break;
        }
      }
    }
    for (int f = 0; f < 4; ++f) {
      if (!faces_[f].outside.empty()) pending_.push_back(f);
    }
    start_of_.assign(pts_.size(), -1);
    end_of_.assign(pts_.size(), -1);
  }

  int furthest(const Face& f) const {
    const Vec3 n = (p(f.v[1]) - p(f.v[0])).cross(p(f.v[2]) - p(f.v[0]));
    int arg = f.outside.front();
    double best = -std::numeric_limits<double>::infinity();
    for (int i : f.outside) {
      const double d = n.dot(p(i) - p(f.v[0]));
      if (d > best) best = d, arg = i;
    }
    return arg;
  }

  void expand() {
    std::vector<int> visible;
    std::vector<std::array<int, 3>> horizon;  // (u, v, face beyond edge u->v)
    std::vector<int> stack;
    std::vector<int> created;
    while (!pending_.empty()) {
      const int seed = pending_.back();
      pending_.pop_back();
      if (!faces_[seed].alive || faces_[seed].outside.empty()) continue;
      const int apex = furthest(faces_[seed]);

      // Flood the faces strictly visible from the apex.
      ++stamp_;
      visible.clear();
      horizon.clear();
      stack.assign(1, seed);
      faces_[seed].visit = stamp_;
      while (!stack.empty()) {
        const int f = stack.back();
        stack.pop_back();
        visible.push_back(f);
        for (int e = 0; e < 3; ++e) {
          const int g = faces_[f].nb[e];
          if (faces_[g].visit == stamp_) continue;
          if (above(faces_[g], apex) > 0) {
            faces_[g].visit = stamp_;
            stack.push_back(g);
          }
        }
      }
      for (int f : visible) {
        for (int e = 0; e < 3; ++e) {
          const int g = faces_[f].nb[e];
          if (faces_[g].visit != stamp_) {
            horizon.push_back({faces_[f].v[e], faces_[f].v[(e + 1) % 3], g});
          }
        }
      }

      created.clear();
      for (const auto& [u, v, beyond] : horizon) {
        Face face;
        face.v = {u, v, apex};
        face.nb = {beyond, -1, -1};
        const int id = static_cast<int>(faces_.size());
        faces_.push_back(std::move(face));
        created.push_back(id);
        Face& other = faces_[beyond];
        for (int e = 0; e < 3; ++e) {
          if (other.v[e] == v && other.v[(e + 1) % 3] == u) other.nb[e] = id;
        }
        start_of_[u] = id;
        end_of_[v] = id;
      }
      for (int id : created) {
        Face& face = faces_[id];
        face.nb[1] = start_of_[face.v[1]];
        face.nb[2] = end_of_[face.v[0]];
      }
      for (const auto& h : horizon) {
        start_of_[h[0]] = -1;
        end_of_[h[1]] = -1;
      }

      for (int f : visible) {
        faces_[f].alive = false;
        for (int i : faces_[f].outside) {
          if (i == apex) continue;
          for (int id : created) {
            if (above(faces_[id], i) > 0) {
              faces_[id].outside.push_back(i);
              break;
            }
          }
        }
        std::vector<int>().swap(faces_[f].outside);
      }
      for (int id : created) {
        if (!faces_[id].outside.empty()) pending_.push_back(id);
      }
    }
  }

  ConvexHull collect() const {
    ConvexHull hull;
    hull.is_vertex.assign(pts_.size(), false);
    std::vector<bool> corner(pts_.size(), false);
    for (const Face& f : faces_) {
      if (!f.alive) continue;
      hull.faces.push_back({f.v});
      for (int v : f.v) corner[static_cast<std::size_t>(v)] = true;
    }
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      hull.is_vertex[i] = corner[static_cast<std::size_t>(rep_[i])];
    }
    return hull;
  }

  std::span<const Vec3> pts_;
  std::vector<int> rep_;
  std::vector<Face> faces_;
  std::vector<int> pending_;
  std::vector<int> start_of_;
  std::vector<int> end_of_;
  std::uint32_t stamp_ = 0;
};

}  // namespace

ConvexHull convex_hull(std::span<const Vec3> points) {
  for (const Vec3& q : points) {
    if (!q.allFinite()) throw Error(ErrorCode::kInvalidArgument, "hull input not finite");
  }
  return QuickHull(points).run();
}

}  // namespace stgeo
