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

#include "pyramidplan/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pyramidplan {

KdTree::KdTree(std::vector<Vec3> points) : points_(std::move(points)), axis_(points_.size(), 0) {
  build(0, points_.size());
}

void KdTree::build(std::size_t lo, std::size_t hi) {
  if (hi - lo <= 1) return;
  Vec3 mn = points_[lo];
  Vec3 mx = points_[lo];
  for (std::size_t i = lo + 1; i < hi; ++i) {
    mn = mn.cwiseMin(points_[i]);
    mx = mx.cwiseMax(points_[i]);
  }
  int axis;
  (mx - mn).maxCoeff(&axis);
  const std::size_t mid = lo + (hi - lo) / 2;
  std::nth_element(points_.begin() + lo, points_.begin() + mid, points_.begin() + hi,
                   [axis](const Vec3& a, const Vec3& b) { return a[axis] < b[axis]; });
  axis_[mid] = static_cast<std::uint8_t>(axis);
  build(lo, mid);
  build(mid + 1, hi);
}

void KdTree::nearest_in(std::size_t lo, std::size_t hi, const Vec3& q, std::size_t& best, double& best_d2) const {
  if (lo >= hi) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  const Vec3& p = points_[mid];
  const double d2 = (p - q).squaredNorm();
  if (d2 < best_d2 || (d2 == best_d2 && mid < best)) {
    best_d2 = d2;
    best = mid;
  }
  if (hi - lo == 1) return;
  const int axis = axis_[mid];
  const double diff = q[axis] - p[axis];
  const bool left_first = diff < 0.0;
  if (left_first) {
    nearest_in(lo, mid, q, best, best_d2);
    if (diff * diff <= best_d2) nearest_in(mid + 1, hi, q, best, best_d2);
  } else {
    nearest_in(mid + 1, hi, q, best, best_d2);
    if (diff * diff <= best_d2) nearest_in(lo, mid, q, best, best_d2);
  }
}

std::optional<KdTree::Neighbor> KdTree::nearest(const Vec3& q) const {
  if (points_.empty()) return std::nullopt;
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  nearest_in(0, points_.size(), q, best, best_d2);
  return Neighbor{best, std::sqrt(best_d2)};
}

bool KdTree::within_in(std::size_t lo, std::size_t hi, const Vec3& q, double r2) const {
  if (lo >= hi) return false;
  const std::size_t mid = lo + (hi - lo) / 2;
  const Vec3& p = points_[mid];
  if ((p - q).squaredNorm() < r2) return true;
  if (hi - lo == 1) return false;
  const int axis = axis_[mid];
  const double diff = q[axis] - p[axis];
  if (diff < 0.0) {
    if (within_in(lo, mid, q, r2)) return true;
    return diff * diff < r2 && within_in(mid + 1, hi, q, r2);
  }
  if (within_in(mid + 1, hi, q, r2)) return true;
  return diff * diff < r2 && within_in(lo, mid, q, r2);
}

bool KdTree::any_within(const Vec3& q, double radius) const { return within_in(0, points_.size(), q, radius * radius); }

KdTree kd_build(const DepthImage& image, double free_depth) {
  const CameraModel& cam = image.camera();
  const float background = image.background_depth();
  std::vector<Vec3> pts;
  pts.reserve(cam.pixel_count());
  for (int v = 0; v < image.height(); ++v) {
    for (int u = 0; u < image.width(); ++u) {
      const float d = image.at(u, v);
      if (static_cast<double>(d) <= free_depth || d <= DepthImage::kInvalid || d >= background) continue;
      pts.push_back(cam.deproject(u, v, d));
    }
  }
  return KdTree(std::move(pts));
}

bool kd_check(const Trajectory& traj, const KdTree& tree, double r, int m_samples) {
  if (m_samples < 2) throw std::invalid_argument("kd_check needs at least two samples");
  if (tree.empty()) return true;
  const double step = traj.duration() / (m_samples - 1);
  for (int i = 0; i < m_samples; ++i) {
    const double t = i == m_samples - 1 ? traj.duration() : i * step;
    if (tree.any_within(traj.position(t), r)) return false;
  }
  return true;
}

}  // namespace pyramidplan
