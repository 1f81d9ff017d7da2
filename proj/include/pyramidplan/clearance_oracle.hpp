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

#include <vector>

#include "pyramidplan/depth_image.hpp"

namespace pyramidplan {

//! Ground-truth distance to occupied-or-unknown space for one depth image.
//!
//! Occupied space is the union over valid pixels q of the truncated center
//! ray {d * ray(q) : d >= depth(q)}; pixels with depth <= free_depth carry
//! no return and contribute nothing. Unknown space is everything deeper
//! than l plus everything outside the field of view at distance >= l from
//! the focal point. Distances are exact (closed form per ray and per
//! unknown-region piece).
//!
//! Holds a reference to the image, which must outlive the oracle.
class ClearanceOracle {
 public:
  static constexpr int kTile = 8;

  explicit ClearanceOracle(const DepthImage& image, double free_depth = 0.0);

  //! Exact clearance by a full scan over every pixel.
  double clearance(const Vec3& x) const;

  //! clearance(x) >= r, visiting only pixels whose rays can come within r
  //! of x (angular window plus per-tile depth bounds).
  bool has_clearance(const Vec3& x, double r) const;

  //! has_clearance at t = 0, dt, 2 dt, ... and at t = T.
  bool trajectory_free(const Trajectory& traj, double r, double dt = 0.005) const;

  //! Distance to the unknown region alone.
  double unknown_distance(const Vec3& x) const;

  const DepthImage& image() const { return *image_; }
  double free_depth() const { return free_depth_; }

 private:
  double ray_distance_sq(int u, int v, float depth, const Vec3& x) const;

  const DepthImage* image_;
  double free_depth_;
  int tiles_x_;
  int tiles_y_;
  std::vector<float> tile_min_;
};

//! Exact clearance of x; see ClearanceOracle.
double point_clearance(const DepthImage& image, const Vec3& x, double free_depth = 0.0);

//! Sampled ground-truth collision check of a camera-frame trajectory with a
//! sphere of radius r. Pixels with depth <= r count as no-return.
bool oracle_trajectory_free(const Trajectory& traj, const DepthImage& image, double r, double dt = 0.005);

}  // namespace pyramidplan
