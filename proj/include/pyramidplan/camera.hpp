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

#include <array>

#include "pyramidplan/trajectory.hpp"

namespace pyramidplan {

//! Continuous pixel coordinates and depth of a projected point.
struct PixelCoord {
  double u;
  double v;
  double depth;
};

//! Pinhole depth camera. Pixel (u, v) has its center ray along
//! ((u - cx) / f, (v - cy) / f, 1); x_C points right, y_C down and z_C into
//! the image. Space outside the field of view farther than
//! unknown_horizon from the focal point, and everything deeper than it, is
//! unknown.
class CameraModel {
 public:
  //! Throws std::invalid_argument unless f > 0, width, height > 0 and l > 0.
  CameraModel(double focal_px, double cx, double cy, int width, int height, double unknown_horizon);

  //! Camera centered on the image with f = 0.6 * width (about 80 degrees
  //! horizontal field of view).
  static CameraModel with_resolution(int width, int height, double unknown_horizon = 10.0);

  double focal_px() const { return f_; }
  double cx() const { return cx_; }
  double cy() const { return cy_; }
  int width() const { return width_; }
  int height() const { return height_; }
  double unknown_horizon() const { return horizon_; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

  //! Throws std::invalid_argument when x is not in front of the camera.
  PixelCoord project(const Vec3& x) const;
  Vec3 deproject(double u, double v, double depth) const {
    return Vec3((u - cx_) / f_ * depth, (v - cy_) / f_ * depth, depth);
  }
  //! Center ray through (u, v), scaled to unit depth.
  Vec3 ray(double u, double v) const { return Vec3((u - cx_) / f_, (v - cy_) / f_, 1.0); }

  double column_slope(double u) const { return (u - cx_) / f_; }
  double row_slope(double v) const { return (v - cy_) / f_; }

  //! Inward unit normals of the planes through the outermost pixel-center
  //! rays, ordered left, right, top, bottom.
  const std::array<Vec3, 4>& fov_normals() const { return fov_normals_; }

  //! Inside the closed frustum spanned by the outermost pixel-center rays.
  bool in_fov(const Vec3& x) const;

  bool operator==(const CameraModel& o) const {
    return f_ == o.f_ && cx_ == o.cx_ && cy_ == o.cy_ && width_ == o.width_ && height_ == o.height_ &&
           horizon_ == o.horizon_;
  }

 private:
  double f_;
  double cx_;
  double cy_;
  int width_;
  int height_;
  double horizon_;
  std::array<Vec3, 4> fov_normals_;
};

}  // namespace pyramidplan
