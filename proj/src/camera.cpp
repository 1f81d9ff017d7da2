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

#include "pyramidplan/camera.hpp"

#include <cmath>
#include <stdexcept>

namespace pyramidplan {

CameraModel::CameraModel(double focal_px, double cx, double cy, int width, int height, double unknown_horizon)
    : f_(focal_px), cx_(cx), cy_(cy), width_(width), height_(height), horizon_(unknown_horizon) {
  if (!(focal_px > 0.0) || !std::isfinite(focal_px)) throw std::invalid_argument("focal length must be positive");
  if (width <= 0 || height <= 0) throw std::invalid_argument("image size must be positive");
  if (!(unknown_horizon > 0.0) || !std::isfinite(unknown_horizon)) {
    throw std::invalid_argument("unknown-space horizon must be positive");
  }
  if (!std::isfinite(cx) || !std::isfinite(cy)) throw std::invalid_argument("principal point must be finite");

  const double a_left = column_slope(0.0);
  const double a_right = column_slope(width - 1.0);
  const double b_top = row_slope(0.0);
  const double b_bottom = row_slope(height - 1.0);
  fov_normals_[0] = Vec3(1.0, 0.0, -a_left).normalized();
  fov_normals_[1] = Vec3(-1.0, 0.0, a_right).normalized();
  fov_normals_[2] = Vec3(0.0, 1.0, -b_top).normalized();
  fov_normals_[3] = Vec3(0.0, -1.0, b_bottom).normalized();
}

CameraModel CameraModel::with_resolution(int width, int height, double unknown_horizon) {
  return CameraModel(0.6 * width, 0.5 * (width - 1), 0.5 * (height - 1), width, height, unknown_horizon);
}

PixelCoord CameraModel::project(const Vec3& x) const {
  if (!(x.z() > 0.0)) throw std::invalid_argument("cannot project a point at or behind the camera");
  return {f_ * x.x() / x.z() + cx_, f_ * x.y() / x.z() + cy_, x.z()};
}

bool CameraModel::in_fov(const Vec3& x) const {
  for (const Vec3& n : fov_normals_) {
    if (n.dot(x) < 0.0) return false;
  }
  return true;
}

}  // namespace pyramidplan
