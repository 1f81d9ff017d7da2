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

#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "pyramidplan/camera.hpp"

namespace pyramidplan {

//! Row-major depth buffer in meters (z-depth, not range).
//!
//! 0 encodes "no return". Background pixels hold the camera's unknown
//! horizon l; every stored value lies in [0, l].
class DepthImage {
 public:
  static constexpr float kInvalid = 0.0f;

  //! Throws std::invalid_argument if the buffer size does not match the
  //! camera or a value is outside [0, l] or non-finite.
  DepthImage(const CameraModel& camera, std::vector<float> depth);

  //! Every pixel set to the background depth l.
  static DepthImage background(const CameraModel& camera);

  const CameraModel& camera() const { return camera_; }
  int width() const { return camera_.width(); }
  int height() const { return camera_.height(); }
  float background_depth() const { return static_cast<float>(camera_.unknown_horizon()); }

  float at(int u, int v) const { return depth_[static_cast<std::size_t>(v) * camera_.width() + u]; }
  std::span<const float> row(int v) const {
    return {depth_.data() + static_cast<std::size_t>(v) * camera_.width(), static_cast<std::size_t>(camera_.width())};
  }
  std::span<const float> data() const { return depth_; }

  bool operator==(const DepthImage& o) const { return camera_ == o.camera_ && depth_ == o.depth_; }

 private:
  CameraModel camera_;
  std::vector<float> depth_;
};

//! Companion metadata file for a depth PGM: same path with a .json
//! extension.
std::filesystem::path depth_sidecar_path(const std::filesystem::path& pgm_path);

//! Writes a 16-bit binary PGM (P5, maxval 65535, big-endian samples) holding
//! depth in millimeters with 0 = invalid, plus the JSON sidecar with the
//! camera intrinsics {f, cx, cy, width, height, l}. Throws
//! std::runtime_error on I/O failure.
void save_depth_pgm(const DepthImage& image, const std::filesystem::path& pgm_path);

//! Inverse of save_depth_pgm. Throws std::runtime_error on malformed input.
DepthImage load_depth_pgm(const std::filesystem::path& pgm_path);

}  // namespace pyramidplan
