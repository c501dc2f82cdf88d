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

#ifndef STGEO_RASTER_HPP
#define STGEO_RASTER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stgeo/error.hpp"

namespace stgeo {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
};

/// Row-major H x W grid.
template <typename T>
class Raster {
 public:
  Raster() = default;
  Raster(int width, int height, const T& fill = T{})
      : width_(width), height_(height) {
    if (width < 0 || height < 0) {
      throw Error(ErrorCode::kInvalidArgument, "negative raster size");
    }
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  T& operator()(int x, int y) { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[index(x, y)]; }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  template <typename U>
  bool same_size(const Raster<U>& other) const {
    return width_ == other.width() && height_ == other.height();
  }

  bool operator==(const Raster&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using RgbImage = Raster<Rgb>;
/// Binary raster, 0 or 1.
using Mask = Raster<std::uint8_t>;

template <typename A, typename B>
void require_same_size(const Raster<A>& a, const Raster<B>& b, const char* what) {
  if (!a.same_size(b)) {
    throw Error(ErrorCode::kSizeMismatch, what);
  }
}

/// Closed metric depth interval [min, max].
struct DepthRange {
  double min = 0.1;
  double max = 100.0;

  bool contains(double d) const { return d >= min && d <= max; }
  void validate() const;

  bool operator==(const DepthRange&) const = default;
};

/// Metric depth raster (meters, float32, 0 = invalid) plus a validity mask
/// kept consistent with the range: valid <=> depth in [min, max].
class DepthFrame {
 public:
  DepthFrame() = default;
  DepthFrame(int width, int height, DepthRange range = {});

  int width() const { return depth_.width(); }
  int height() const { return depth_.height(); }
  std::size_t size() const { return depth_.size(); }
  const DepthRange& range() const { return range_; }

  /// Stores d when it lies in range, otherwise marks the pixel invalid.
  /// Returns whether the pixel ended up valid.
  bool set(int x, int y, float d) { return set_index(depth_.index(x, y), d); }
  bool set_index(std::size_t i, float d) {
    if (range_.contains(d)) {
      depth_[i] = d;
      valid_[i] = 1;
      return true;
    }
    depth_[i] = 0.0f;
    valid_[i] = 0;
    return false;
  }
  void clear(int x, int y) { set_index(depth_.index(x, y), 0.0f); }

  float depth(int x, int y) const { return depth_(x, y); }
  bool valid(int x, int y) const { return valid_(x, y) != 0; }
  float depth_at(std::size_t i) const { return depth_[i]; }
  bool valid_at(std::size_t i) const { return valid_[i] != 0; }

  const Raster<float>& depth() const { return depth_; }
  const Mask& valid() const { return valid_; }
  std::size_t valid_count() const;

  /// Builds a frame from raw values; entries outside the range become invalid.
  static DepthFrame from_raster(const Raster<float>& depth, DepthRange range);

  bool operator==(const DepthFrame&) const = default;

 private:
  DepthRange range_;
  Raster<float> depth_;
  Mask valid_;
};

}  // namespace stgeo

#endif  // STGEO_RASTER_HPP
