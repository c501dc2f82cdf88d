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

#include "stgeo/io.hpp"

#include <png.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "stgeo/error.hpp"

namespace stgeo::io {

static_assert(std::endian::native == std::endian::little,
              "interchange encoders assume a little-endian host");

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  static std::atomic<unsigned> counter{0};
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIo, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::kIo, "cannot rename into " + path.string() + ": " + ec.message());
  }
}

fs::path make_scratch_dir(const char* prefix) {
  static std::atomic<unsigned> counter{0};
  const fs::path dir = fs::temp_directory_path() /
                       (std::string(prefix) + std::to_string(::getpid()) + "-" +
                        std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (const char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

}  // namespace

std::string expand_command(std::string command,
                           const std::vector<std::pair<std::string, std::string>>& vars) {
  for (const auto& [key, value] : vars) {
    const std::string token = "{" + key + "}";
    const std::string quoted = shell_quote(value);
    for (std::size_t pos = command.find(token); pos != std::string::npos;
         pos = command.find(token, pos + quoted.size())) {
      command.replace(pos, token.size(), quoted);
    }
  }
  return command;
}

void run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw Error(ErrorCode::kBackendFailure, "command failed: " + command);
  }
}

// ---------------------------------------------------------------------------
// PFM

std::string encode_pfm(const Raster<float>& depth) {
  std::string out = "Pf\n" + std::to_string(depth.width()) + " " +
                    std::to_string(depth.height()) + "\n-1.0\n";
  const std::size_t header = out.size();
  const std::size_t row_bytes = static_cast<std::size_t>(depth.width()) * sizeof(float);
  out.resize(header + row_bytes * static_cast<std::size_t>(depth.height()));
  for (int y = 0; y < depth.height(); ++y) {
    // PFM stores the bottom row first.
    const int src = depth.height() - 1 - y;
    if (row_bytes > 0) {
      std::memcpy(out.data() + header + row_bytes * static_cast<std::size_t>(y),
                  &depth(0, src), row_bytes);
    }
  }
  return out;
}

Raster<float> decode_pfm(std::string_view bytes) {
  std::size_t pos = 0;
  auto next_line = [&]() {
    const std::size_t end = bytes.find('\n', pos);
    if (end == std::string_view::npos) throw Error(ErrorCode::kFormat, "truncated PFM header");
    std::string line(bytes.substr(pos, end - pos));
    pos = end + 1;
    return line;
  };
  if (next_line() != "Pf") throw Error(ErrorCode::kFormat, "not a single-channel PFM");
  int width = 0;
  int height = 0;
  {
    std::istringstream dims(next_line());
    if (!(dims >> width >> height) || width < 0 || height < 0) {
      throw Error(ErrorCode::kFormat, "bad PFM dimensions");
    }
  }
  double scale = 0.0;
  {
    std::istringstream s(next_line());
    if (!(s >> scale) || scale == 0.0) throw Error(ErrorCode::kFormat, "bad PFM scale");
  }
  const std::size_t row_bytes = static_cast<std::size_t>(width) * sizeof(float);
  if (bytes.size() - pos != row_bytes * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::kFormat, "PFM payload size mismatch");
  }
  Raster<float> out(width, height);
  for (int y = 0; y < height; ++y) {
    const int dst = height - 1 - y;
    if (row_bytes > 0) {
      std::memcpy(&out(0, dst), bytes.data() + pos + row_bytes * static_cast<std::size_t>(y),
                  row_bytes);
    }
  }
  if (scale > 0.0) {  // big-endian payload
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = std::bit_cast<float>(__builtin_bswap32(std::bit_cast<std::uint32_t>(out[i])));
    }
  }
  return out;
}

void write_pfm(const fs::path& path, const DepthFrame& depth) {
  write_file_atomic(path, encode_pfm(depth.depth()));
}

DepthFrame read_pfm(const fs::path& path, const DepthRange& range) {
  return DepthFrame::from_raster(decode_pfm(read_file(path)), range);
}

// ---------------------------------------------------------------------------
// PNG

namespace {

void png_error_fn(png_structp, png_const_charp msg) { throw Error(ErrorCode::kFormat, msg); }
void png_warning_fn(png_structp, png_const_charp) {}

void png_append(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(data), length);
}

// Rows are handed over as raw bytes already in PNG order (16-bit big-endian).
std::string encode_png(int width, int height, int color_type, int bit_depth,
                       const std::vector<const unsigned char*>& rows) {
  std::string out;
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warning_fn);
  if (png == nullptr) throw Error(ErrorCode::kIo, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  try {
    png_set_write_fn(png, &out, png_append, nullptr);
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
                 bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (const unsigned char* row : rows) png_write_row(png, row);
    png_write_end(png, nullptr);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
  return out;
}

struct PngSource {
  std::string_view bytes;
  std::size_t pos = 0;
};

void png_consume(png_structp png, png_bytep data, png_size_t length) {
  auto* src = static_cast<PngSource*>(png_get_io_ptr(png));
  if (src->pos + length > src->bytes.size()) throw Error(ErrorCode::kFormat, "truncated PNG");
  std::memcpy(data, src->bytes.data() + src->pos, length);
  src->pos += length;
}

struct DecodedPng {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<unsigned char> pixels;  // 8-bit, row-major, interleaved
};

DecodedPng decode_png(std::string_view bytes, int want_channels) {
  if (bytes.size() < 8 || png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8)) {
    throw Error(ErrorCode::kFormat, "not a PNG");
  }
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warning_fn);
  png_infop info = png_create_info_struct(png);
  PngSource src{bytes, 0};
  DecodedPng out;
  try {
    png_set_read_fn(png, &src, png_consume);
    png_read_info(png, info);
    const int color = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);
    if (depth == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    const bool is_gray = color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA;
    if (want_channels == 3 && is_gray) png_set_gray_to_rgb(png);
    if (want_channels == 1 && !is_gray) png_set_rgb_to_gray_fixed(png, 1, -1, -1);
    png_read_update_info(png, info);
    out.width = static_cast<int>(png_get_image_width(png, info));
    out.height = static_cast<int>(png_get_image_height(png, info));
    out.channels = png_get_channels(png, info);
    if (out.channels != want_channels) throw Error(ErrorCode::kFormat, "unexpected PNG layout");
    const std::size_t stride = static_cast<std::size_t>(out.width) * out.channels;
    out.pixels.resize(stride * static_cast<std::size_t>(out.height));
    std::vector<png_bytep> rows(static_cast<std::size_t>(out.height));
    for (int y = 0; y < out.height; ++y) rows[y] = out.pixels.data() + stride * y;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

}  // namespace

std::string encode_png_rgb(const RgbImage& image) {
  static_assert(sizeof(Rgb) == 3);
  std::vector<const unsigned char*> rows(static_cast<std::size_t>(image.height()));
  for (int y = 0; y < image.height(); ++y) {
    rows[y] = reinterpret_cast<const unsigned char*>(&image(0, y));
  }
  return encode_png(image.width(), image.height(), PNG_COLOR_TYPE_RGB, 8, rows);
}

RgbImage decode_png_rgb(std::string_view bytes) {
  const DecodedPng d = decode_png(bytes, 3);
  RgbImage out(d.width, d.height);
  std::memcpy(out.data().data(), d.pixels.data(), d.pixels.size());
  return out;
}

void write_png_rgb(const fs::path& path, const RgbImage& image) {
  write_file_atomic(path, encode_png_rgb(image));
}

RgbImage read_png_rgb(const fs::path& path) { return decode_png_rgb(read_file(path)); }

std::string encode_png_gray8(const Raster<std::uint8_t>& image) {
  std::vector<const unsigned char*> rows(static_cast<std::size_t>(image.height()));
  for (int y = 0; y < image.height(); ++y) rows[y] = &image(0, y);
  return encode_png(image.width(), image.height(), PNG_COLOR_TYPE_GRAY, 8, rows);
}

Raster<std::uint8_t> decode_png_gray8(std::string_view bytes) {
  const DecodedPng d = decode_png(bytes, 1);
  Raster<std::uint8_t> out(d.width, d.height);
  std::memcpy(out.data().data(), d.pixels.data(), d.pixels.size());
  return out;
}

void write_png_gray8(const fs::path& path, const Raster<std::uint8_t>& image) {
  write_file_atomic(path, encode_png_gray8(image));
}

Raster<std::uint8_t> read_png_gray8(const fs::path& path) {
  return decode_png_gray8(read_file(path));
}

void write_mask_png(const fs::path& path, const Mask& mask) {
  Raster<std::uint8_t> scaled(mask.width(), mask.height());
  for (std::size_t i = 0; i < mask.size(); ++i) scaled[i] = mask[i] ? 255 : 0;
  write_png_gray8(path, scaled);
}

Mask read_mask_png(const fs::path& path) {
  Raster<std::uint8_t> raw = read_png_gray8(path);
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = raw[i] ? 1 : 0;
  return raw;
}

void write_depth_png16(const fs::path& path, const DepthFrame& depth) {
  const auto w = static_cast<std::size_t>(depth.width());
  std::vector<unsigned char> buf(w * 2 * static_cast<std::size_t>(depth.height()));
  for (int y = 0; y < depth.height(); ++y) {
    for (int x = 0; x < depth.width(); ++x) {
      std::uint16_t mm = 0;
      if (depth.valid(x, y)) {
        const double v = std::round(static_cast<double>(depth.depth(x, y)) * 1000.0);
        mm = static_cast<std::uint16_t>(std::clamp(v, 0.0, 65535.0));
      }
      unsigned char* px = buf.data() + (static_cast<std::size_t>(y) * w + x) * 2;
      px[0] = static_cast<unsigned char>(mm >> 8);
      px[1] = static_cast<unsigned char>(mm & 0xff);
    }
  }
  std::vector<const unsigned char*> rows(static_cast<std::size_t>(depth.height()));
  for (int y = 0; y < depth.height(); ++y) rows[y] = buf.data() + static_cast<std::size_t>(y) * w * 2;
  write_file_atomic(path, encode_png(depth.width(), depth.height(), PNG_COLOR_TYPE_GRAY, 16, rows));
}

// ---------------------------------------------------------------------------
// PLY

std::string encode_ply(const PointCloud& cloud) {
  std::string out = "ply\nformat binary_little_endian 1.0\nelement vertex " +
                    std::to_string(cloud.size()) +
                    "\nproperty float x\nproperty float y\nproperty float z\n"
                    "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  if (cloud.has_labels()) out += "property uchar label\n";
  out += "property uchar source\nend_header\n";
  const std::size_t stride = 3 * sizeof(float) + 3 + (cloud.has_labels() ? 1 : 0) + 1;
  std::size_t pos = out.size();
  out.resize(pos + stride * cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3& p = cloud.position(i);
    const float xyz[3] = {static_cast<float>(p.x()), static_cast<float>(p.y()),
                          static_cast<float>(p.z())};
    std::memcpy(out.data() + pos, xyz, sizeof(xyz));
    pos += sizeof(xyz);
    const Rgb c = cloud.color(i);
    out[pos++] = static_cast<char>(c.r);
    out[pos++] = static_cast<char>(c.g);
    out[pos++] = static_cast<char>(c.b);
    if (cloud.has_labels()) out[pos++] = static_cast<char>(cloud.label(i));
    out[pos++] = static_cast<char>(cloud.source(i));
  }
  return out;
}

PointCloud decode_ply(std::string_view bytes) {
  struct Property {
    std::string name;
    std::size_t size;
    bool is_float;  // float32 vs unsigned integer
  };
  std::size_t pos = 0;
  auto next_line = [&]() {
    const std::size_t end = bytes.find('\n', pos);
    if (end == std::string_view::npos) throw Error(ErrorCode::kFormat, "truncated PLY header");
    std::string line(bytes.substr(pos, end - pos));
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };
  if (next_line() != "ply") throw Error(ErrorCode::kFormat, "not a PLY file");
  std::size_t count = 0;
  bool in_vertex = false;
  std::vector<Property> props;
  for (;;) {
    const std::string line = next_line();
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "end_header") break;
    if (word == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt != "binary_little_endian") {
        throw Error(ErrorCode::kFormat, "only binary_little_endian PLY is supported");
      }
    } else if (word == "element") {
      std::string name;
      ls >> name >> count;
      in_vertex = name == "vertex";
      if (!in_vertex) throw Error(ErrorCode::kFormat, "unexpected PLY element " + name);
    } else if (word == "property" && in_vertex) {
      std::string type, name;
      ls >> type >> name;
      if (type == "float" || type == "float32") {
        props.push_back({name, 4, true});
      } else if (type == "uchar" || type == "uint8") {
        props.push_back({name, 1, false});
      } else {
        throw Error(ErrorCode::kFormat, "unsupported PLY property type " + type);
      }
    }
  }
  std::size_t stride = 0;
  for (const Property& p : props) stride += p.size;
  if (bytes.size() - pos < stride * count) throw Error(ErrorCode::kFormat, "PLY payload truncated");

  auto has = [&](const char* name) {
    return std::any_of(props.begin(), props.end(), [&](const Property& p) { return p.name == name; });
  };
  if (!has("x") || !has("y") || !has("z")) throw Error(ErrorCode::kFormat, "PLY lacks x/y/z");
  PointCloud cloud(has("red"), has("label"));
  cloud.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Vec3 p = Vec3::Zero();
    Rgb c;
    std::uint8_t label = 0;
    auto source = Source::kRendered;
    const char* rec = bytes.data() + pos + i * stride;
    for (const Property& prop : props) {
      if (prop.is_float) {
        float v;
        std::memcpy(&v, rec, 4);
        if (prop.name == "x") p.x() = v;
        else if (prop.name == "y") p.y() = v;
        else if (prop.name == "z") p.z() = v;
      } else {
        const auto v = static_cast<std::uint8_t>(*rec);
        if (prop.name == "red") c.r = v;
        else if (prop.name == "green") c.g = v;
        else if (prop.name == "blue") c.b = v;
        else if (prop.name == "label") label = v;
        else if (prop.name == "source") {
          if (v > 2) throw Error(ErrorCode::kFormat, "unknown source tag in PLY");
          source = static_cast<Source>(v);
        }
      }
      rec += prop.size;
    }
    cloud.add(p, source, c, label);
  }
  return cloud;
}

void write_ply(const fs::path& path, const PointCloud& cloud) {
  write_file_atomic(path, encode_ply(cloud));
}

PointCloud read_ply(const fs::path& path) { return decode_ply(read_file(path)); }

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json vec_json(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

Vec3 vec_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::kFormat, "expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

nlohmann::json rgb_json(Rgb c) { return {c.r, c.g, c.b}; }

Rgb rgb_from(const nlohmann::json& j) {
  return {j.at(0).get<std::uint8_t>(), j.at(1).get<std::uint8_t>(), j.at(2).get<std::uint8_t>()};
}

nlohmann::json extent_json(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

double extent_from(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, e.what());
  }
}

}  // namespace

nlohmann::json to_json(const RigidTransform& xf, std::string_view convention) {
  const Mat4 m = xf.matrix();
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) rows.push_back(m(r, c));
  }
  return {{"convention", convention}, {"matrix", rows}};
}

RigidTransform transform_from_json(const nlohmann::json& j, std::string_view expected) {
  return guarded([&] {
    const auto convention = j.at("convention").get<std::string>();
    if (convention != expected) {
      throw Error(ErrorCode::kFormat, "expected convention '" + std::string(expected) +
                                          "', got '" + convention + "'");
    }
    const auto& m = j.at("matrix");
    if (!m.is_array() || m.size() != 16) throw Error(ErrorCode::kFormat, "matrix needs 16 entries");
    Mat4 mat;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) mat(r, c) = m[static_cast<std::size_t>(r * 4 + c)].get<double>();
    }
    return RigidTransform::from_matrix(mat);
  });
}

nlohmann::json to_json(const Intrinsics& k) {
  return {{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx}, {"cy", k.cy},
          {"width", k.width}, {"height", k.height}};
}

Intrinsics intrinsics_from_json(const nlohmann::json& j) {
  return guarded([&] {
    Intrinsics k{j.at("fx").get<double>(), j.at("fy").get<double>(), j.at("cx").get<double>(),
                 j.at("cy").get<double>(), j.at("width").get<int>(),  j.at("height").get<int>()};
    k.validate();
    return k;
  });
}

nlohmann::json to_json(const BBox3D& box) {
  nlohmann::json corners = nlohmann::json::array();
  for (const Vec3& c : box.corners()) corners.push_back(vec_json(c));
  return {{"corners", corners}, {"class_id", box.class_id()}};
}

BBox3D box_from_json(const nlohmann::json& j) {
  return guarded([&] {
    const auto& cj = j.at("corners");
    if (!cj.is_array() || cj.size() != 8) throw Error(ErrorCode::kFormat, "box needs 8 corners");
    std::array<Vec3, 8> corners;
    for (std::size_t i = 0; i < 8; ++i) corners[i] = vec_from(cj[i]);
    return BBox3D(corners, j.at("class_id").get<int>());
  });
}

nlohmann::json to_json(const SceneScript& script) {
  nlohmann::json frames = nlohmann::json::array();
  for (const ScriptFrame& f : script.frames) {
    nlohmann::json boxes = nlohmann::json::array();
    for (const BBox3D& b : f.boxes) boxes.push_back(to_json(b));
    nlohmann::json cams = nlohmann::json::array();
    for (const Pose& p : f.cameras) cams.push_back(to_json(p));
    nlohmann::json layers = nlohmann::json::array();
    for (int l = 0; l < f.map.layers; ++l) {
      nlohmann::json rows = nlohmann::json::array();
      for (int y = 0; y < f.map.height; ++y) {
        std::string row(static_cast<std::size_t>(f.map.width), '0');
        for (int x = 0; x < f.map.width; ++x) {
          if (f.map.at(l, x, y)) row[static_cast<std::size_t>(x)] = '1';
        }
        rows.push_back(row);
      }
      layers.push_back(rows);
    }
    frames.push_back({{"index", f.index},
                      {"ego", to_json(f.ego, "ego_to_world")},
                      {"cameras", cams},
                      {"boxes", boxes},
                      {"map",
                       {{"width", f.map.width},
                        {"height", f.map.height},
                        {"layers", f.map.layers},
                        {"rows", layers}}}});
  }
  return {{"frames", frames}};
}

SceneScript scene_script_from_json(const nlohmann::json& j) {
  return guarded([&] {
    SceneScript script;
    for (const auto& fj : j.at("frames")) {
      ScriptFrame f;
      f.index = fj.at("index").get<int>();
      f.ego = transform_from_json(fj.at("ego"), "ego_to_world");
      for (const auto& c : fj.at("cameras")) f.cameras.push_back(transform_from_json(c));
      for (const auto& b : fj.at("boxes")) f.boxes.push_back(box_from_json(b));
      const auto& mj = fj.at("map");
      f.map.width = mj.at("width").get<int>();
      f.map.height = mj.at("height").get<int>();
      f.map.layers = mj.at("layers").get<int>();
      f.map.bits.assign(static_cast<std::size_t>(f.map.width) * f.map.height * f.map.layers, 0);
      const auto& layers = mj.at("rows");
      if (layers.size() != static_cast<std::size_t>(f.map.layers)) {
        throw Error(ErrorCode::kFormat, "map layer count mismatch");
      }
      for (int l = 0; l < f.map.layers; ++l) {
        const auto& rows = layers[static_cast<std::size_t>(l)];
        if (rows.size() != static_cast<std::size_t>(f.map.height)) {
          throw Error(ErrorCode::kFormat, "map row count mismatch");
        }
        for (int y = 0; y < f.map.height; ++y) {
          const auto row = rows[static_cast<std::size_t>(y)].get<std::string>();
          if (row.size() != static_cast<std::size_t>(f.map.width)) {
            throw Error(ErrorCode::kFormat, "map row width mismatch");
          }
          for (int x = 0; x < f.map.width; ++x) {
            const char ch = row[static_cast<std::size_t>(x)];
            // Non-binary characters are kept so validate() can reject them.
            f.map.bits[(static_cast<std::size_t>(l) * f.map.height + y) * f.map.width + x] =
                ch == '0' ? 0 : (ch == '1' ? 1 : 2);
          }
        }
      }
      script.frames.push_back(std::move(f));
    }
    script.validate();
    return script;
  });
}

nlohmann::json to_json(const synth::SynthScene& scene) {
  nlohmann::json prims = nlohmann::json::array();
  for (const synth::Primitive& prim : scene.primitives) {
    nlohmann::json pj;
    if (const auto* plane = std::get_if<synth::Plane>(&prim.shape)) {
      pj = {{"type", "plane"},
            {"point", vec_json(plane->point)},
            {"normal", vec_json(plane->normal)},
            {"u_axis", vec_json(plane->u_axis)},
            {"half_u", extent_json(plane->half_u)},
            {"half_v", extent_json(plane->half_v)}};
    } else if (const auto* sphere = std::get_if<synth::Sphere>(&prim.shape)) {
      pj = {{"type", "sphere"}, {"center", vec_json(sphere->center)}, {"radius", sphere->radius}};
    } else {
      const auto& box = std::get<synth::Box>(prim.shape);
      pj = {{"type", "box"}, {"min", vec_json(box.min)}, {"max", vec_json(box.max)}};
    }
    pj["color"] = {
        {"kind", prim.color.kind == synth::ColorFn::Kind::kChecker ? "checker" : "constant"},
        {"a", rgb_json(prim.color.a)},
        {"b", rgb_json(prim.color.b)},
        {"period", prim.color.period}};
    prims.push_back(pj);
  }
  return {{"primitives", prims}};
}

synth::SynthScene synth_scene_from_json(const nlohmann::json& j) {
  return guarded([&] {
    synth::SynthScene scene;
    for (const auto& pj : j.at("primitives")) {
      synth::Primitive prim;
      const auto type = pj.at("type").get<std::string>();
      if (type == "plane") {
        synth::Plane plane;
        plane.point = vec_from(pj.at("point"));
        plane.normal = vec_from(pj.at("normal"));
        if (pj.contains("u_axis")) {
          plane.u_axis = vec_from(pj.at("u_axis"));
        } else {
          plane.u_axis = synth::Plane::make(plane.point, plane.normal).u_axis;
        }
        plane.half_u = pj.contains("half_u") ? extent_from(pj.at("half_u"))
                                             : std::numeric_limits<double>::infinity();
        plane.half_v = pj.contains("half_v") ? extent_from(pj.at("half_v"))
                                             : std::numeric_limits<double>::infinity();
        prim.shape = plane;
      } else if (type == "sphere") {
        prim.shape = synth::Sphere{vec_from(pj.at("center")), pj.at("radius").get<double>()};
      } else if (type == "box") {
        prim.shape = synth::Box{vec_from(pj.at("min")), vec_from(pj.at("max"))};
      } else {
        throw Error(ErrorCode::kFormat, "unknown primitive type " + type);
      }
      if (pj.contains("color")) {
        const auto& cj = pj.at("color");
        prim.color.kind = cj.value("kind", std::string("constant")) == "checker"
                              ? synth::ColorFn::Kind::kChecker
                              : synth::ColorFn::Kind::kConstant;
        prim.color.a = rgb_from(cj.at("a"));
        prim.color.b = cj.contains("b") ? rgb_from(cj.at("b")) : prim.color.a;
        prim.color.period = cj.value("period", synth::kDefaultCheckerPeriod);
      }
      scene.primitives.push_back(prim);
    }
    scene.validate();
    return scene;
  });
}

nlohmann::json read_json(const fs::path& path) {
  const std::string text = read_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace stgeo::io
