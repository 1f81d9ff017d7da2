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

#include <cstdint>
#include <optional>
#include <vector>

#include "pyramidplan/depth_image.hpp"

namespace pyramidplan {

//! Balanced 3-d tree over a fixed point set, built by median splits on the
//! axis of widest spread. The baseline collision checker: it sees only
//! detected points, not occlusions or the field of view.
class KdTree {
 public:
  struct Neighbor {
    std::size_t index;  // into points()
    double distance;
  };

  KdTree() = default;
  explicit KdTree(std::vector<Vec3> points);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  //! Points in tree order.
  const std::vector<Vec3>& points() const { return points_; }

  std::optional<Neighbor> nearest(const Vec3& q) const;
  //! True iff some point lies strictly closer than radius to q.
  bool any_within(const Vec3& q, double radius) const;

 private:
  void build(std::size_t lo, std::size_t hi);
  void nearest_in(std::size_t lo, std::size_t hi, const Vec3& q, std::size_t& best, double& best_d2) const;
  bool within_in(std::size_t lo, std::size_t hi, const Vec3& q, double r2) const;

  std::vector<Vec3> points_;
  std::vector<std::uint8_t> axis_;
};

//! One deprojected point per pixel that is neither background (depth >= l)
//! nor no-return (depth <= free_depth).
KdTree kd_build(const DepthImage& image, double free_depth = 0.0);

//! True iff the nearest stored point is at least r away at each of
//! m_samples evenly spaced times over [0, T]. Requires m_samples >= 2.
bool kd_check(const Trajectory& traj, const KdTree& tree, double r, int m_samples);

}  // namespace pyramidplan
