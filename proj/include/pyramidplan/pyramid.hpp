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
#include <optional>
#include <variant>
#include <vector>

#include "pyramidplan/depth_image.hpp"

namespace pyramidplan {

//! Inclusive pixel bounds.
struct PixelRect {
  int x0 = 0;
  int x1 = 0;
  int y0 = 0;
  int y1 = 0;

  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
  bool operator==(const PixelRect&) const = default;
};

//! Free-space cell with its apex at the camera focal point.
//!
//! Four lateral planes through the apex (inward unit normals ordered left,
//! right, top, bottom) and a base plane z = base_depth. The expanded
//! rectangle and depth describe the unshrunk frustum it was cut from.
struct Pyramid {
  std::array<Vec3, 4> lateral_normals;
  double base_depth = 0.0;
  PixelRect expanded_rect;
  double expanded_depth = 0.0;

  //! Strict interior test for an apex-relative point: boundary points,
  //! including the apex, are outside.
  bool contains(const Vec3& x) const {
    if (!(x.z() > 0.0 && x.z() < base_depth)) return false;
    for (const Vec3& n : lateral_normals) {
      if (!(n.dot(x) > 0.0)) return false;
    }
    return true;
  }
};

enum class InflateFailure { BehindCamera, OutsideImage, OccludedSeed, BandTooClose, NotContained };

const char* to_string(InflateFailure f);

using InflateResult = std::variant<Pyramid, InflateFailure>;

//! Grows a pyramid around the point s.
//!
//! The nearest pixel to s seeds a rectangle that grows one row or column
//! at a time (left, right, top, bottom in turn) while every pixel on the
//! new line is either a no-return (depth <= r) or deeper than z_s + r.
//! The expanded depth is the rectangle's minimum return, capped by
//! max_pyramid_depth and by the depth at which the rectangle's corner rays
//! reach distance l - r from the apex. Each face is then tilted inward
//! about the apex until it clears, by r, every return outside the
//! rectangle on its side (out-of-image space counts as depth l), and the
//! base is pulled in by r. Fails unless the result strictly contains s.
//!
//! Every point of a returned pyramid has clearance >= r from the occupied
//! and unknown space of the image as seen with no-return threshold r.
InflateResult inflate_pyramid(const Vec3& s, const DepthImage& image, double r, double max_pyramid_depth);

//! Pyramids generated for one depth image, in creation order.
class PyramidStore {
 public:
  //! First pyramid that strictly contains x, or nullptr.
  const Pyramid* find_containing(const Vec3& x) const {
    for (const Pyramid& p : pyramids_) {
      if (p.contains(x)) return &p;
    }
    return nullptr;
  }

  const Pyramid& push(const Pyramid& p) {
    pyramids_.push_back(p);
    return pyramids_.back();
  }
  std::size_t size() const { return pyramids_.size(); }
  bool empty() const { return pyramids_.empty(); }
  void clear() { pyramids_.clear(); }
  const std::vector<Pyramid>& pyramids() const { return pyramids_; }

 private:
  std::vector<Pyramid> pyramids_;
};

}  // namespace pyramidplan
