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

#include "manifest.hpp"

#include <openssl/evp.h>

#include <Eigen/Core>
#include <algorithm>
#include <vector>

#include "stgeo/error.hpp"
#include "stgeo/io.hpp"

namespace stgeo::cli {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIo, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string sha256_file(const fs::path& path) { return sha256_hex(io::read_file(path)); }

namespace {

std::vector<fs::path> files_below(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(fs::relative(entry.path(), dir));
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

Manifest::Manifest(std::string command, const PipelineConfig& config) {
  const std::string yaml = config.to_yaml();
  doc_ = {{"schema", kManifestSchema},
          {"command", std::move(command)},
          {"versions",
           {{"stgeo", STGEO_VERSION_STRING},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                          std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
          {"config", yaml},
          {"config_sha256", sha256_hex(yaml)},
          {"seed", config.seed},
          {"arguments", nlohmann::json::object()},
          {"inputs", nlohmann::json::array()}};
}

void Manifest::argument(const std::string& key, nlohmann::json value) {
  doc_["arguments"][key] = std::move(value);
}

void Manifest::input(const fs::path& path) {
  nlohmann::json entry = {{"path", path.string()}};
  if (fs::is_directory(path)) {
    nlohmann::json files = nlohmann::json::array();
    for (const fs::path& rel : files_below(path)) {
      files.push_back({{"path", rel.string()}, {"sha256", sha256_file(path / rel)}});
    }
    entry["files"] = std::move(files);
  } else {
    entry["sha256"] = sha256_file(path);
  }
  doc_["inputs"].push_back(std::move(entry));
}

void Manifest::write(const fs::path& out) {
  nlohmann::json outputs = nlohmann::json::array();
  for (const fs::path& rel : files_below(out)) {
    if (rel == "manifest.json") continue;
    outputs.push_back({{"path", rel.string()}, {"sha256", sha256_file(out / rel)}});
  }
  doc_["outputs"] = std::move(outputs);
  io::write_json(out / "manifest.json", doc_);
}

}  // namespace stgeo::cli
