/*
 * Copyright 2026 The pyramidplan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pyramidplan/depth_image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pyramidplan {

DepthImage::DepthImage(const CameraModel& camera, std::vector<float> depth)
    : camera_(camera), depth_(std::move(depth)) {
  if (depth_.size() != camera_.pixel_count()) {
    throw std::invalid_argument("depth buffer size does not match the camera resolution");
  }
  const float l = background_depth();
  for (float d : depth_) {
    if (!std::isfinite(d) || d < 0.0f || d > l) {
      throw std::invalid_argument("depth values must lie in [0, l]");
    }
  }
}

DepthImage DepthImage::background(const CameraModel& camera) {
  return DepthImage(camera, std::vector<float>(camera.pixel_count(), static_cast<float>(camera.unknown_horizon())));
}

std::filesystem::path depth_sidecar_path(const std::filesystem::path& pgm_path) {
  std::filesystem::path p = pgm_path;
  p.replace_extension(".json");
  return p;
}

void save_depth_pgm(const DepthImage& image, const std::filesystem::path& pgm_path) {
  std::ofstream out(pgm_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + pgm_path.string() + " for writing");
  out << "P5\n" << image.width() << ' ' << image.height() << "\n65535\n";
  std::vector<unsigned char> bytes;
  bytes.reserve(image.data().size() * 2);
  for (float d : image.data()) {
    const double mm = std::clamp(std::round(static_cast<double>(d) * 1000.0), 0.0, 65535.0);
    const auto v = static_cast<std::uint16_t>(mm);
    bytes.push_back(static_cast<unsigned char>(v >> 8));
    bytes.push_back(static_cast<unsigned char>(v & 0xff));
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + pgm_path.string());

  const CameraModel& cam = image.camera();
  nlohmann::json meta = {{"f", cam.focal_px()},     {"cx", cam.cx()},          {"cy", cam.cy()},
                         {"width", cam.width()},    {"height", cam.height()},  {"l", cam.unknown_horizon()}};
  std::ofstream side(depth_sidecar_path(pgm_path));
  if (!side) throw std::runtime_error("cannot write sidecar for " + pgm_path.string());
  side << meta.dump(2) << '\n';
}

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  char ch;
  while (in.get(ch)) {
    if (ch == '#') {
      std::string ignored;
      std::getline(in, ignored);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(ch);
  }
  return tok;
}

}  // namespace

DepthImage load_depth_pgm(const std::filesystem::path& pgm_path) {
  std::ifstream side(depth_sidecar_path(pgm_path));
  if (!side) throw std::runtime_error("missing sidecar " + depth_sidecar_path(pgm_path).string());
  nlohmann::json meta;
  try {
    side >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed depth sidecar: ") + e.what());
  }
  CameraModel cam(meta.at("f").get<double>(), meta.at("cx").get<double>(), meta.at("cy").get<double>(),
                  meta.at("width").get<int>(), meta.at("height").get<int>(), meta.at("l").get<double>());

  std::ifstream in(pgm_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + pgm_path.string());
  if (pgm_token(in) != "P5") throw std::runtime_error("not a binary PGM: " + pgm_path.string());
  const int w = std::stoi(pgm_token(in));
  const int h = std::stoi(pgm_token(in));
  const int maxval = std::stoi(pgm_token(in));
  if (w != cam.width() || h != cam.height()) throw std::runtime_error("PGM size disagrees with sidecar");
  if (maxval != 65535) throw std::runtime_error("depth PGM must be 16-bit (maxval 65535)");

  std::vector<unsigned char> bytes(cam.pixel_count() * 2);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) throw std::runtime_error("truncated PGM data");

  const float l = static_cast<float>(cam.unknown_horizon());
  std::vector<float> depth(cam.pixel_count());
  for (std::size_t i = 0; i < depth.size(); ++i) {
    const unsigned v = (static_cast<unsigned>(bytes[2 * i]) << 8) | bytes[2 * i + 1];
    depth[i] = std::min(static_cast<float>(v) / 1000.0f, l);
  }
  return DepthImage(cam, std::move(depth));
}

}  // namespace pyramidplan
