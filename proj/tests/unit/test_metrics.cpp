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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stgeo/error.hpp"
#include "stgeo/metrics.hpp"

namespace stgeo {
namespace {

DepthMap map_of(std::vector<double> d) {
  DepthMap m;
  m.width = static_cast<int>(d.size());
  m.height = 1;
  m.valid.assign(d.size(), 1);
  m.depth = std::move(d);
  return m;
}

TEST(EvalDepth, HandComputedValues) {
  const DepthMap gt = map_of({1.0, 2.0, 4.0, 8.0});
  const DepthMap pred = map_of({1.0, 3.0, 4.0, 4.0});
  const auto r = eval_depth(pred, gt);
  EXPECT_DOUBLE_EQ(r.abs_rel, (0.0 + 0.5 + 0.0 + 0.5) / 4.0);
  EXPECT_DOUBLE_EQ(r.rmse, std::sqrt((1.0 + 16.0) / 4.0));
  EXPECT_DOUBLE_EQ(r.delta1, 0.5);
  EXPECT_DOUBLE_EQ(r.delta2, 0.75);
  EXPECT_EQ(r.n_pixels, 4u);
}

TEST(EvalDepth, RangeIsExclusiveBelowInclusiveAbove) {
  const DepthMap gt = map_of({0.1, 0.2, 100.0, 100.5});
  const DepthMap pred = map_of({1.0, 0.2, 100.0, 1.0});
  const auto r = eval_depth(pred, gt, {0.1, 100.0});
  EXPECT_EQ(r.n_pixels, 2u);
  EXPECT_EQ(r.abs_rel, 0.0);
}

TEST(EvalDepth, MedianOfEvenCountAveragesTheMiddlePair) {
  const DepthMap gt = map_of({2.0, 2.0, 2.0, 2.0});
  const DepthMap pred = map_of({1.0, 1.0, 0.5, 0.5});
  const auto r = eval_depth(pred, gt, {}, Scaling::kMedian);
  EXPECT_DOUBLE_EQ(r.scale_factor, 3.0);
}

TEST(EvalDepth, Errors) {
  DepthMap gt = map_of({1.0, 2.0});
  DepthMap pred = map_of({1.0, 2.0});
  pred.valid = {0, 0};
  try {
    eval_depth(pred, gt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyOverlap);
  }
  EXPECT_THROW(eval_depth(map_of({1.0}), gt), Error);
  try {
    eval_depth(map_of({1.0, 1.0}), map_of({-1.0, 2.0}), {-2.0, 100.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonPositiveGT);
  }
  EXPECT_THROW(eval_depth(map_of({0.0, 1.0}), map_of({1.0, 2.0})), Error);
}

TEST(EvalDepth, MatchesBruteForceOnRandomMaps) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    CounterRng rng(41, s);
    const DepthMap g = testing::random_depth_map(rng, 17, 13, 0.6);
    const DepthMap p = testing::random_depth_map(rng, 17, 13, 0.6);
    for (const Scaling sc : {Scaling::kNone, Scaling::kMedian}) {
      const auto a = eval_depth(p, g, {}, sc);
      const auto b = testing::brute_eval(p, g, {}, sc);
      EXPECT_NEAR(a.abs_rel, b.abs_rel, 1e-12);
      EXPECT_NEAR(a.rmse, b.rmse, 1e-12);
      EXPECT_EQ(a.delta1, b.delta1);
      EXPECT_EQ(a.delta2, b.delta2);
      EXPECT_EQ(a.n_pixels, b.n_pixels);
      EXPECT_NEAR(a.scale_factor, b.scale_factor, 1e-15);
    }
  }
}

TEST(EvalSequence, PooledVersusFrameMean) {
  const std::vector<DepthMap> gt = {map_of({1.0}), map_of({1.0, 1.0, 1.0})};
  const std::vector<DepthMap> pred = {map_of({2.0}), map_of({1.0, 1.0, 1.0})};
  const auto pooled = eval_sequence(pred, gt, {}, Scaling::kNone, Aggregation::kPixelPooled);
  EXPECT_DOUBLE_EQ(pooled.aggregate.abs_rel, 0.25);
  EXPECT_EQ(pooled.aggregate.n_pixels, 4u);
  ASSERT_EQ(pooled.per_frame.size(), 2u);
  const auto mean = eval_sequence(pred, gt, {}, Scaling::kNone, Aggregation::kFrameMean);
  EXPECT_DOUBLE_EQ(mean.aggregate.abs_rel, 0.5);
  // One global median under pooled median scaling.
  const auto pooled_m = eval_sequence(pred, gt, {}, Scaling::kMedian, Aggregation::kPixelPooled);
  EXPECT_DOUBLE_EQ(pooled_m.aggregate.scale_factor, 1.0);
}

TEST(Report, JsonRoundTripAndTable) {
  const auto r = eval_depth(map_of({1.0, 2.0}), map_of({1.5, 2.0}), {}, Scaling::kMedian);
  const auto back = report_from_json(to_json(r));
  EXPECT_EQ(back.abs_rel, r.abs_rel);
  EXPECT_EQ(back.scaling, Scaling::kMedian);
  EXPECT_EQ(back.n_pixels, r.n_pixels);
  const std::vector<DepthEvalReport> rows = {r};
  const std::string table = format_table(rows);
  EXPECT_NE(table.find("Abs.Rel"), std::string::npos);
  EXPECT_NE(table.find("with median"), std::string::npos);
}

}  // namespace
}  // namespace stgeo
