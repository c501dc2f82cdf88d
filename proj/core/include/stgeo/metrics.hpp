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

#ifndef STGEO_METRICS_HPP
#define STGEO_METRICS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stgeo/raster.hpp"

namespace stgeo {

/// Double-precision depth raster for evaluation. Kept separate from the
/// float32 DepthFrame so that scale-invariance properties hold to 1e-12.
struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<double> depth;
  std::vector<std::uint8_t> valid;

  static DepthMap from_frame(const DepthFrame& frame);
};

/// Ground-truth pixels count when min < gt <= max.
struct EvalRange {
  double min = 0.1;
  double max = 100.0;

  bool contains(double gt) const { return gt > min && gt <= max; }
};

enum class Scaling { kNone, kMedian };

struct DepthEvalReport {
  double abs_rel = 0.0;
  double rmse = 0.0;    // meters
  double delta1 = 0.0;  // fraction with max(p/g, g/p) < 1.25
  double delta2 = 0.0;  // ... < 1.25^2
  std::size_t n_pixels = 0;
  Scaling scaling = Scaling::kNone;
  double scale_factor = 1.0;
};

/// Statistics over pixels valid in both maps with gt inside `range`. With
/// median scaling the prediction is multiplied by s = median(gt / pred)
/// first.
///
/// Throws kSizeMismatch, kEmptyOverlap when no pixel qualifies,
/// kNonPositiveGT for a qualifying gt <= 0, and kInvalidArgument for a
/// qualifying prediction <= 0.
DepthEvalReport eval_depth(const DepthMap& pred, const DepthMap& gt, const EvalRange& range = {},
                           Scaling scaling = Scaling::kNone);
DepthEvalReport eval_depth(const DepthFrame& pred, const DepthFrame& gt,
                           const EvalRange& range = {}, Scaling scaling = Scaling::kNone);

enum class Aggregation { kPixelPooled, kFrameMean };

struct SequenceReport {
  DepthEvalReport aggregate;
  std::vector<DepthEvalReport> per_frame;
};

/// Evaluates matching (pred, gt) pairs. Pooled aggregation treats all
/// frames as one pixel set (one global median when scaling); frame-mean
/// averages the per-frame statistics.
SequenceReport eval_sequence(std::span<const DepthMap> preds, std::span<const DepthMap> gts,
                             const EvalRange& range = {}, Scaling scaling = Scaling::kNone,
                             Aggregation aggregation = Aggregation::kPixelPooled);

std::string to_string(Scaling scaling);
nlohmann::json to_json(const DepthEvalReport& report);
DepthEvalReport report_from_json(const nlohmann::json& j);

/// Aligned text table with one row per report, in the order given.
std::string format_table(std::span<const DepthEvalReport> reports);

}  // namespace stgeo

#endif  // STGEO_METRICS_HPP
