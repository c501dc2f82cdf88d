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

#include "stgeo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "stgeo/error.hpp"

namespace stgeo {

DepthMap DepthMap::from_frame(const DepthFrame& frame) {
  DepthMap m;
  m.width = frame.width();
  m.height = frame.height();
  m.depth.resize(frame.size());
  m.valid.resize(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    m.depth[i] = frame.depth_at(i);
    m.valid[i] = frame.valid_at(i) ? 1 : 0;
  }
  return m;
}

namespace {

constexpr double kDeltaBase = 1.25;

struct Sample {
  double pred;
  double gt;
};

void check_shapes(const DepthMap& pred, const DepthMap& gt) {
  const auto n = static_cast<std::size_t>(gt.width) * static_cast<std::size_t>(gt.height);
  if (pred.width != gt.width || pred.height != gt.height || pred.depth.size() != n ||
      gt.depth.size() != n || pred.valid.size() != n || gt.valid.size() != n) {
    throw Error(ErrorCode::kSizeMismatch, "prediction and ground truth differ in size");
  }
}

// Appends the qualifying (pred, gt) pairs in pixel order.
void collect(const DepthMap& pred, const DepthMap& gt, const EvalRange& range,
             std::vector<Sample>& out) {
  check_shapes(pred, gt);
  for (std::size_t i = 0; i < gt.depth.size(); ++i) {
    if (!pred.valid[i] || !gt.valid[i] || !range.contains(gt.depth[i])) continue;
    if (!(gt.depth[i] > 0.0)) {
      throw Error(ErrorCode::kNonPositiveGT, "ground truth <= 0 inside the evaluation set");
    }
    if (!(pred.depth[i] > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "prediction <= 0 inside the evaluation set");
    }
    out.push_back({pred.depth[i], gt.depth[i]});
  }
}

double median_ratio(const std::vector<Sample>& samples) {
  std::vector<double> ratios(samples.size());
  std::transform(samples.begin(), samples.end(), ratios.begin(),
                 [](const Sample& s) { return s.gt / s.pred; });
  const std::size_t mid = ratios.size() / 2;
  std::nth_element(ratios.begin(), ratios.begin() + static_cast<std::ptrdiff_t>(mid), ratios.end());
  const double upper = ratios[mid];
  if (ratios.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(ratios.begin(), ratios.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

DepthEvalReport summarize(const std::vector<Sample>& samples, Scaling scaling) {
  if (samples.empty()) {
    throw Error(ErrorCode::kEmptyOverlap, "no pixel is valid in both maps within range");
  }
  DepthEvalReport r;
  r.scaling = scaling;
  r.scale_factor = scaling == Scaling::kMedian ? median_ratio(samples) : 1.0;
  double abs_rel = 0.0;
  double sq = 0.0;
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  for (const Sample& s : samples) {
    const double p = r.scale_factor * s.pred;
    const double diff = p - s.gt;
    abs_rel += std::abs(diff) / s.gt;
    sq += diff * diff;
    const double ratio = std::max(p / s.gt, s.gt / p);
    if (ratio < kDeltaBase) ++d1;
    if (ratio < kDeltaBase * kDeltaBase) ++d2;
  }
  const auto n = static_cast<double>(samples.size());
  r.n_pixels = samples.size();
  r.abs_rel = abs_rel / n;
  r.rmse = std::sqrt(sq / n);
  r.delta1 = static_cast<double>(d1) / n;
  r.delta2 = static_cast<double>(d2) / n;
  return r;
}

}  // namespace

DepthEvalReport eval_depth(const DepthMap& pred, const DepthMap& gt, const EvalRange& range,
                           Scaling scaling) {
  std::vector<Sample> samples;
  collect(pred, gt, range, samples);
  return summarize(samples, scaling);
}

DepthEvalReport eval_depth(const DepthFrame& pred, const DepthFrame& gt, const EvalRange& range,
                           Scaling scaling) {
  return eval_depth(DepthMap::from_frame(pred), DepthMap::from_frame(gt), range, scaling);
}

SequenceReport eval_sequence(std::span<const DepthMap> preds, std::span<const DepthMap> gts,
                             const EvalRange& range, Scaling scaling, Aggregation aggregation) {
  if (preds.size() != gts.size()) {
    throw Error(ErrorCode::kSizeMismatch, "prediction and ground-truth sequences differ in length");
  }
  SequenceReport out;
  std::vector<Sample> pooled;
  std::vector<Sample> frame;
  for (std::size_t f = 0; f < preds.size(); ++f) {
    frame.clear();
    collect(preds[f], gts[f], range, frame);
    // Frames without overlap contribute nothing to the pool.
    if (!frame.empty()) out.per_frame.push_back(summarize(frame, scaling));
    pooled.insert(pooled.end(), frame.begin(), frame.end());
  }
  if (pooled.empty()) {
    throw Error(ErrorCode::kEmptyOverlap, "no pixel is valid in both maps within range");
  }
  if (aggregation == Aggregation::kPixelPooled) {
    out.aggregate = summarize(pooled, scaling);
    return out;
  }
  DepthEvalReport mean;
  mean.scaling = scaling;
  mean.scale_factor = 0.0;
  for (const DepthEvalReport& r : out.per_frame) {
    mean.abs_rel += r.abs_rel;
    mean.rmse += r.rmse;
    mean.delta1 += r.delta1;
    mean.delta2 += r.delta2;
    mean.scale_factor += r.scale_factor;
    mean.n_pixels += r.n_pixels;
  }
  const auto frames = static_cast<double>(out.per_frame.size());
  mean.abs_rel /= frames;
  mean.rmse /= frames;
  mean.delta1 /= frames;
  mean.delta2 /= frames;
  mean.scale_factor /= frames;
  out.aggregate = mean;
  return out;
}

std::string to_string(Scaling scaling) { return scaling == Scaling::kMedian ? "median" : "none"; }

nlohmann::json to_json(const DepthEvalReport& r) {
  return {{"abs_rel", r.abs_rel},           {"rmse", r.rmse},
          {"delta1", r.delta1},             {"delta2", r.delta2},
          {"n_pixels", r.n_pixels},         {"scaling", to_string(r.scaling)},
          {"scale_factor", r.scale_factor}};
}

DepthEvalReport report_from_json(const nlohmann::json& j) {
  DepthEvalReport r;
  r.abs_rel = j.at("abs_rel").get<double>();
  r.rmse = j.at("rmse").get<double>();
  r.delta1 = j.at("delta1").get<double>();
  r.delta2 = j.at("delta2").get<double>();
  r.n_pixels = j.at("n_pixels").get<std::size_t>();
  r.scaling = j.at("scaling").get<std::string>() == "median" ? Scaling::kMedian : Scaling::kNone;
  r.scale_factor = j.at("scale_factor").get<double>();
  return r;
}

std::string format_table(std::span<const DepthEvalReport> reports) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof(line), "%-16s %10s %10s %10s %10s %12s %10s\n", "scaling", "Abs.Rel",
                "RMSE", "d<1.25", "d<1.25^2", "pixels", "scale");
  os << line;
  for (const DepthEvalReport& r : reports) {
    const std::string label = r.scaling == Scaling::kMedian ? "with median" : "without median";
    std::snprintf(line, sizeof(line), "%-16s %10.4f %10.4f %10.4f %10.4f %12zu %10.4f\n",
                  label.c_str(), r.abs_rel, r.rmse, r.delta1, r.delta2, r.n_pixels,
                  r.scale_factor);
    os << line;
  }
  return os.str();
}

}  // namespace stgeo
