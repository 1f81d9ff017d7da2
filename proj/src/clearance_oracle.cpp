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

#include "pyramidplan/clearance_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pyramidplan {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Pixel index window [lo, hi] whose center-ray slopes can lie within r of
// the point (lateral, depth) once both are projected onto the plane spanned
// by the optical axis and this image axis.
void slope_window(double lateral, double depth, double r, double f, double c, int size, int& lo, int& hi) {
  lo = 0;
  hi = size - 1;
  const double rho = std::hypot(lateral, depth);
  if (rho <= r) return;
  const double theta = std::atan2(lateral, depth);
  const double delta = std::asin(r / rho);
  const double a_lo = theta - delta;
  const double a_hi = theta + delta;
  if (a_hi <= -kHalfPi || a_lo >= kHalfPi) {
    lo = 1;
    hi = 0;
    return;
  }
  if (a_lo > -kHalfPi) {
    const double px = f * std::tan(a_lo) + c;
    lo = std::max(lo, static_cast<int>(std::clamp(std::floor(px) - 1.0, -1.0, static_cast<double>(size))));
  }
  if (a_hi < kHalfPi) {
    const double px = f * std::tan(a_hi) + c;
    hi = std::min(hi, static_cast<int>(std::clamp(std::ceil(px) + 1.0, -1.0, static_cast<double>(size))));
  }
}

}  // namespace

ClearanceOracle::ClearanceOracle(const DepthImage& image, double free_depth)
    : image_(&image), free_depth_(free_depth) {
  tiles_x_ = (image.width() + kTile - 1) / kTile;
  tiles_y_ = (image.height() + kTile - 1) / kTile;
  tile_min_.assign(static_cast<std::size_t>(tiles_x_) * tiles_y_, std::numeric_limits<float>::infinity());
  for (int v = 0; v < image.height(); ++v) {
    for (int u = 0; u < image.width(); ++u) {
      const float d = image.at(u, v);
      if (static_cast<double>(d) <= free_depth_) continue;
      float& m = tile_min_[static_cast<std::size_t>(v / kTile) * tiles_x_ + u / kTile];
      m = std::min(m, d);
    }
  }
}

double ClearanceOracle::unknown_distance(const Vec3& x) const {
  const double l = image_->camera().unknown_horizon();
  double best = std::max(0.0, l - x.z());
  const double norm = x.norm();
  for (const Vec3& n : image_->camera().fov_normals()) {
    const double s = n.dot(x);
    double d;
    if (s <= 0.0) {
      d = std::max(0.0, l - norm);
    } else {
      const double in_plane = (x - s * n).norm();
      d = in_plane >= l ? s : std::hypot(s, l - in_plane);
    }
    best = std::min(best, d);
  }
  return best;
}

double ClearanceOracle::ray_distance_sq(int u, int v, float depth, const Vec3& x) const {
  const Vec3 dir = image_->camera().ray(u, v);
  const Vec3 w = x - static_cast<double>(depth) * dir;
  const double along = w.dot(dir);
  const double w2 = w.squaredNorm();
  if (along <= 0.0) return w2;
  return std::max(0.0, w2 - along * along / dir.squaredNorm());
}

double ClearanceOracle::clearance(const Vec3& x) const {
  double best = unknown_distance(x);
  for (int v = 0; v < image_->height(); ++v) {
    for (int u = 0; u < image_->width(); ++u) {
      const float d = image_->at(u, v);
      if (static_cast<double>(d) <= free_depth_) continue;
      // Every point of the truncated ray is at least depth - z away.
      if (static_cast<double>(d) - x.z() >= best) continue;
      best = std::min(best, std::sqrt(ray_distance_sq(u, v, d, x)));
    }
  }
  return best;
}

bool ClearanceOracle::has_clearance(const Vec3& x, double r) const {
  const double l = image_->camera().unknown_horizon();
  if (x.z() > l - r) return false;
  if (x.norm() > l - r && unknown_distance(x) < r) return false;

  const double depth_limit = x.z() + r;
  if (!(depth_limit > free_depth_)) return true;

  const CameraModel& cam = image_->camera();
  int u_lo, u_hi, v_lo, v_hi;
  slope_window(x.x(), x.z(), r, cam.focal_px(), cam.cx(), cam.width(), u_lo, u_hi);
  slope_window(x.y(), x.z(), r, cam.focal_px(), cam.cy(), cam.height(), v_lo, v_hi);
  if (u_lo > u_hi || v_lo > v_hi) return true;

  const double r2 = r * r;
  for (int ty = v_lo / kTile; ty <= v_hi / kTile; ++ty) {
    for (int tx = u_lo / kTile; tx <= u_hi / kTile; ++tx) {
      if (static_cast<double>(tile_min_[static_cast<std::size_t>(ty) * tiles_x_ + tx]) > depth_limit) continue;
      const int v_end = std::min(v_hi, ty * kTile + kTile - 1);
      const int u_end = std::min(u_hi, tx * kTile + kTile - 1);
      for (int v = std::max(v_lo, ty * kTile); v <= v_end; ++v) {
        for (int u = std::max(u_lo, tx * kTile); u <= u_end; ++u) {
          const float d = image_->at(u, v);
          const double dd = static_cast<double>(d);
          if (dd <= free_depth_ || dd > depth_limit) continue;
          if (ray_distance_sq(u, v, d, x) < r2) return false;
        }
      }
    }
  }
  return true;
}

bool ClearanceOracle::trajectory_free(const Trajectory& traj, double r, double dt) const {
  const double T = traj.duration();
  for (long k = 0;; ++k) {
    const double t = std::min(static_cast<double>(k) * dt, T);
    if (!has_clearance(traj.position(t), r)) return false;
    if (t >= T) return true;
  }
}

double point_clearance(const DepthImage& image, const Vec3& x, double free_depth) {
  return ClearanceOracle(image, free_depth).clearance(x);
}

bool oracle_trajectory_free(const Trajectory& traj, const DepthImage& image, double r, double dt) {
  return ClearanceOracle(image, r).trajectory_free(traj, r, dt);
}

}  // namespace pyramidplan
