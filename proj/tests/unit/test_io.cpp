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

#include <cstring>
#include <filesystem>

#include "oracles.hpp"
#include "stgeo/error.hpp"
#include "stgeo/io.hpp"

namespace stgeo {
namespace {

namespace fs = std::filesystem;

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = io::make_scratch_dir("stgeo-io-test"); }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(IoTest, PfmRoundTripKeepsBitsAndInvalidity) {
  CounterRng rng(71, 0);
  const DepthFrame f = testing::random_sparse_frame(rng, 13, 7, 0.5);
  io::write_pfm(dir_ / "d.pfm", f);
  EXPECT_EQ(io::read_pfm(dir_ / "d.pfm"), f);
}

TEST_F(IoTest, PfmRowsAreStoredBottomUp) {
  Raster<float> r(2, 2);
  r(0, 0) = 1.0f;
  r(1, 1) = 4.0f;
  const std::string bytes = io::encode_pfm(r);
  const std::string header = "Pf\n2 2\n-1.0\n";
  ASSERT_EQ(bytes.substr(0, header.size()), header);
  float first;
  std::memcpy(&first, bytes.data() + header.size(), 4);
  EXPECT_EQ(first, 0.0f);  // bottom-left pixel comes first
  float last;
  std::memcpy(&last, bytes.data() + bytes.size() - 4, 4);
  EXPECT_EQ(last, 0.0f);
  EXPECT_EQ(io::decode_pfm(bytes), r);
}

TEST(Pfm, BigEndianAndMalformedInput) {
  Raster<float> r(1, 1);
  r[0] = 2.5f;
  std::string bytes = io::encode_pfm(r);
  std::string big = "Pf\n1 1\n1.0\n";
  const char* p = bytes.data() + bytes.size() - 4;
  big += std::string{p[3], p[2], p[1], p[0]};
  EXPECT_EQ(io::decode_pfm(big), r);
  EXPECT_THROW(io::decode_pfm("P6\n1 1\n255\n"), Error);
  EXPECT_THROW(io::decode_pfm("Pf\n2 2\n-1.0\nabc"), Error);
}

TEST_F(IoTest, PngRoundTrips) {
  RgbImage rgb(5, 3);
  for (std::size_t i = 0; i < rgb.size(); ++i) {
    rgb[i] = {static_cast<std::uint8_t>(i * 10), static_cast<std::uint8_t>(255 - i), 7};
  }
  io::write_png_rgb(dir_ / "c.png", rgb);
  EXPECT_EQ(io::read_png_rgb(dir_ / "c.png"), rgb);
  Mask m(5, 3);
  m(1, 1) = 1;
  io::write_mask_png(dir_ / "m.png", m);
  EXPECT_EQ(io::read_mask_png(dir_ / "m.png"), m);
  EXPECT_EQ(io::read_png_gray8(dir_ / "m.png")(1, 1), 255);
  EXPECT_THROW(io::decode_png_rgb("not a png"), Error);
}

TEST_F(IoTest, PlyRoundTrip) {
  CounterRng rng(72, 0);
  const PointCloud cloud = testing::random_box_cloud(rng, 100, 3.0);
  io::write_ply(dir_ / "c.ply", cloud);
  const PointCloud back = io::read_ply(dir_ / "c.ply");
  ASSERT_EQ(back.size(), cloud.size());
  EXPECT_TRUE(back.has_labels());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    EXPECT_EQ(back.position(i), cloud.position(i).cast<float>().cast<double>());
    EXPECT_EQ(back.color(i), cloud.color(i));
    EXPECT_EQ(back.label(i), cloud.label(i));
    EXPECT_EQ(back.source(i), cloud.source(i));
  }
  EXPECT_THROW(io::decode_ply("ply\nformat ascii 1.0\nend_header\n"), Error);
}

TEST(Json, TransformsCarryConventions) {
  CounterRng rng(73, 0);
  const Pose p = testing::random_pose(rng, 10);
  const auto j = io::to_json(p);
  EXPECT_EQ(j.at("convention"), "camera_to_world");
  EXPECT_EQ(io::transform_from_json(j), p);
  EXPECT_THROW(io::transform_from_json(j, "ego_to_world"), Error);
  nlohmann::json bad = j;
  bad["matrix"][0] = 3.0;
  EXPECT_THROW(io::transform_from_json(bad), Error);
}

TEST(Json, IntrinsicsBoxesAndScenes) {
  const Intrinsics k{10, 11, 5, 6, 12, 13};
  EXPECT_EQ(io::intrinsics_from_json(io::to_json(k)), k);
  const BBox3D box = BBox3D::from_center({1, 2, 3}, {4, 2, 1}, 0.4, 7);
  const BBox3D back = io::box_from_json(io::to_json(box));
  EXPECT_EQ(back.corners(), box.corners());
  EXPECT_EQ(back.class_id(), 7);

  synth::SynthScene s;
  s.primitives.push_back({synth::Plane::make({0, 0, 1}, {0, 0, 1}), synth::ColorFn::constant({1, 2, 3})});
  s.primitives.push_back({synth::Sphere{{1, 2, 3}, 0.5}, synth::ColorFn::checker({1, 1, 1}, {2, 2, 2}, 0.3)});
  s.primitives.push_back({synth::Box{{0, 0, 0}, {1, 1, 1}}, synth::ColorFn{}});
  const auto j = io::to_json(s);
  EXPECT_EQ(io::to_json(io::synth_scene_from_json(j)), j);
  EXPECT_TRUE(j["primitives"][0]["half_u"].is_null());
}

TEST(Json, SceneScriptRoundTripAndValidation) {
  SceneScript script;
  ScriptFrame f;
  f.index = 0;
  f.map = LayoutMap{3, 2, 2, {1, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0}};
  f.boxes.push_back(BBox3D::from_center({0, 0, 0}, {1, 1, 1}, 0, 1));
  f.cameras.push_back(Pose::translation_only({0, 1, 0}));
  script.frames.push_back(f);
  const auto j = io::to_json(script);
  const SceneScript back = io::scene_script_from_json(j);
  EXPECT_EQ(back.frames[0].map, f.map);
  EXPECT_EQ(io::to_json(back), j);
  script.frames[0].map.bits[0] = 2;
  EXPECT_THROW(script.validate(), Error);
  script.frames[0].map.bits[0] = 1;
  script.frames[0].index = 1;
  EXPECT_THROW(script.validate(), Error);
}

TEST(ExpandCommand, QuotesValues) {
  const std::string cmd = io::expand_command("run {a} --x {b} {a}", {{"a", "p q"}, {"b", "it's"}});
  EXPECT_EQ(cmd, "run 'p q' --x 'it'\\''s' 'p q'");
  EXPECT_THROW(io::run_command("exit 4"), Error);
  EXPECT_NO_THROW(io::run_command("true"));
}

}  // namespace
}  // namespace stgeo
