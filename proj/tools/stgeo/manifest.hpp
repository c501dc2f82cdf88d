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

#ifndef STGEO_TOOLS_MANIFEST_HPP
#define STGEO_TOOLS_MANIFEST_HPP

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "stgeo/config.hpp"

namespace stgeo::cli {

inline constexpr const char* kManifestSchema = "stgeo.manifest/1";

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Run record written next to a command's outputs. Contains nothing that
/// varies between identical runs (no timestamps, no thread counts).
class Manifest {
 public:
  Manifest(std::string command, const PipelineConfig& config);

  void argument(const std::string& key, nlohmann::json value);
  /// Hashes a file, or every file below a directory in path order.
  void input(const std::filesystem::path& path);
  /// Hashes everything already written below `out` and writes
  /// out/manifest.json.
  void write(const std::filesystem::path& out);

 private:
  nlohmann::json doc_;
};

}  // namespace stgeo::cli

#endif  // STGEO_TOOLS_MANIFEST_HPP
