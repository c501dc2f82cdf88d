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
// Interchange formats:
//   depth   PFM ("Pf", little-endian float32, bottom-to-top rows), meters,
//           0 = invalid; optional 16-bit PNG export in millimeters
//   masks   8-bit grayscale PNG, 0 / 255
//   rgb     8-bit RGB PNG
//   clouds  binary little-endian PLY
//   poses   JSON, row-major 4x4 with an explicit "convention" field

#ifndef STGEO_IO_HPP
#define STGEO_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "stgeo/geometry.hpp"
#include "stgeo/pointcloud.hpp"
#include "stgeo/raster.hpp"
#include "stgeo/scene_script.hpp"
#include "stgeo/synth.hpp"

namespace stgeo::io {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const fs::path& path, std::string_view bytes);

/// Creates an empty, uniquely named directory under the system temp dir.
fs::path make_scratch_dir(const char* prefix);

/// Replaces each "{key}" in `command` by the shell-quoted value.
std::string expand_command(std::string command,
                           const std::vector<std::pair<std::string, std::string>>& vars);

/// Runs `command` through the shell; a nonzero exit is kBackendFailure.
void run_command(const std::string& command);

// -- depth ------------------------------------------------------------------

std::string encode_pfm(const Raster<float>& depth);
Raster<float> decode_pfm(std::string_view bytes);

void write_pfm(const fs::path& path, const DepthFrame& depth);
/// Entries outside `range` come back invalid.
DepthFrame read_pfm(const fs::path& path, const DepthRange& range = {});

/// Millimeter 16-bit PNG; values above 65.535 m saturate. Export only.
void write_depth_png16(const fs::path& path, const DepthFrame& depth);

// -- images -----------------------------------------------------------------

std::string encode_png_rgb(const RgbImage& image);
RgbImage decode_png_rgb(std::string_view bytes);
void write_png_rgb(const fs::path& path, const RgbImage& image);
RgbImage read_png_rgb(const fs::path& path);

/// Raw 8-bit grayscale values.
std::string encode_png_gray8(const Raster<std::uint8_t>& image);
Raster<std::uint8_t> decode_png_gray8(std::string_view bytes);

/// Binary masks as 0 / 255; any nonzero value reads back as 1.
void write_mask_png(const fs::path& path, const Mask& mask);
Mask read_mask_png(const fs::path& path);

void write_png_gray8(const fs::path& path, const Raster<std::uint8_t>& image);
Raster<std::uint8_t> read_png_gray8(const fs::path& path);

// -- clouds -----------------------------------------------------------------

/// x, y, z float32; red, green, blue uint8; label uint8 (when present);
/// source uint8.
std::string encode_ply(const PointCloud& cloud);
PointCloud decode_ply(std::string_view bytes);
void write_ply(const fs::path& path, const PointCloud& cloud);
PointCloud read_ply(const fs::path& path);

// -- JSON -------------------------------------------------------------------

inline constexpr std::string_view kPoseConvention = "camera_to_world";

nlohmann::json to_json(const RigidTransform& xf, std::string_view convention = kPoseConvention);
/// Rejects a convention field other than `expected`.
RigidTransform transform_from_json(const nlohmann::json& j,
                                   std::string_view expected = kPoseConvention);

nlohmann::json to_json(const Intrinsics& k);
Intrinsics intrinsics_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BBox3D& box);
BBox3D box_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SceneScript& script);
SceneScript scene_script_from_json(const nlohmann::json& j);

nlohmann::json to_json(const synth::SynthScene& scene);
synth::SynthScene synth_scene_from_json(const nlohmann::json& j);

nlohmann::json read_json(const fs::path& path);
void write_json(const fs::path& path, const nlohmann::json& j);

}  // namespace stgeo::io

#endif  // STGEO_IO_HPP
