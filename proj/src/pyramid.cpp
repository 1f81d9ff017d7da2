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

#include "pyramidplan/pyramid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "pyramidplan/simd/depth_kernels.hpp"

namespace pyramidplan {

const char* to_string(InflateFailure f) {
  switch (f) {
    case InflateFailure::BehindCamera:
      return "behind-camera";
    case InflateFailure::OutsideImage:
      return "outside-image";
    case InflateFailure::OccludedSeed:
      return "occluded-seed";
    case InflateFailure::BandTooClose:
      return "band-too-close";
    case InflateFailure::NotContained:
      return "not-contained";
  }
  return "unknown";
}

namespace {

constexpr float kInf = std::numeric_limits<float>::infinity();

// Largest float <= x, so float comparisons never classify a return as free
// when the double threshold would not.
float float_at_most(double x) {
  float f = static_cast<float>(x);
  if (static_cast<double>(f) > x) f = std::nextafter(f, -kInf);
  return f;
}

float float_at_least(double x) {
  float f = static_cast<float>(x);
  if (static_cast<double>(f) < x) f = std::nextafter(f, kInf);
  return f;
}

bool column_clear(const DepthImage& img, int u, int v0, int v1, float threshold, float free_depth) {
  for (int v = v0; v <= v1; ++v) {
    const float d = img.at(u, v);
    if (d > free_depth && d <= threshold) return false;
  }
  return true;
}

float rows_min(const DepthImage& img, int v0, int v1, int u0, int u1, float free_depth) {
  float m = kInf;
  if (u0 > u1) return m;
  for (int v = v0; v <= v1; ++v) {
    m = std::min(m, simd::min_occupied(img.row(v).subspan(u0, u1 - u0 + 1), free_depth));
  }
  return m;
}

PixelRect grow_rect(const DepthImage& img, int pu, int pv, float threshold, float free_depth) {
  PixelRect rc{pu, pu, pv, pv};
  const int w = img.width();
  const int h = img.height();
  std::array<bool, 4> active{true, true, true, true};
  bool any = true;
  while (any) {
    any = false;
    if (active[0]) {
      active[0] = rc.x0 > 0 && column_clear(img, rc.x0 - 1, rc.y0, rc.y1, threshold, free_depth);
      if (active[0]) --rc.x0;
    }
    if (active[1]) {
      active[1] = rc.x1 < w - 1 && column_clear(img, rc.x1 + 1, rc.y0, rc.y1, threshold, free_depth);
      if (active[1]) ++rc.x1;
    }
    if (active[2]) {
      active[2] = rc.y0 > 0 && simd::all_clear(img.row(rc.y0 - 1).subspan(rc.x0, rc.width()), threshold, free_depth);
      if (active[2]) --rc.y0;
    }
    if (active[3]) {
      active[3] =
          rc.y1 < h - 1 && simd::all_clear(img.row(rc.y1 + 1).subspan(rc.x0, rc.width()), threshold, free_depth);
      if (active[3]) ++rc.y1;
    }
    any = active[0] || active[1] || active[2] || active[3];
  }
  return rc;
}

// Inward normal of the plane through the apex with lateral slope `slope`
// along one image axis; sign +1 keeps points with larger slope.
Vec3 face_normal(int axis, double slope, double sign) {
  Vec3 n = Vec3::Zero();
  n[axis] = sign;
  n.z() = -sign * slope;
  return n.normalized();
}

}  // namespace

InflateResult inflate_pyramid(const Vec3& s, const DepthImage& image, double r, double max_pyramid_depth) {
  const CameraModel& cam = image.camera();
  if (!(s.z() > 0.0)) return InflateFailure::BehindCamera;
  const PixelCoord pc = cam.project(s);
  if (!(pc.u >= -0.5 && pc.u < cam.width() - 0.5 && pc.v >= -0.5 && pc.v < cam.height() - 0.5)) {
    return InflateFailure::OutsideImage;
  }
  const int pu = std::clamp(static_cast<int>(std::lround(pc.u)), 0, cam.width() - 1);
  const int pv = std::clamp(static_cast<int>(std::lround(pc.v)), 0, cam.height() - 1);

  const float free_depth = float_at_most(r);
  const float threshold = float_at_least(s.z() + r);
  const float seed_depth = image.at(pu, pv);
  if (seed_depth > free_depth && seed_depth <= threshold) return InflateFailure::OccludedSeed;

  const PixelRect rc = grow_rect(image, pu, pv, threshold, free_depth);

  const double l = cam.unknown_horizon();
  const double a_lo = cam.column_slope(rc.x0);
  const double a_hi = cam.column_slope(rc.x1);
  const double b_lo = cam.row_slope(rc.y0);
  const double b_hi = cam.row_slope(rc.y1);
  const double a_max = std::max(std::abs(a_lo), std::abs(a_hi));
  const double b_max = std::max(std::abs(b_lo), std::abs(b_hi));
  const double corner_cos = 1.0 / std::sqrt(1.0 + a_max * a_max + b_max * b_max);

  double z_e = static_cast<double>(rows_min(image, rc.y0, rc.y1, rc.x0, rc.x1, free_depth));
  z_e = std::min({z_e, max_pyramid_depth, (l - r) * corner_cos + r});

  // Tilt each face inward until it clears, by r, every return on its side
  // of the rectangle. Per image line (column for the left and right faces,
  // row for the top and bottom ones) only the line's nearest return
  // matters: projected onto the plane of the face's image axis and z_C,
  // that return lies at radius rho >= depth * sqrt(1 + slope^2) and at an
  // angle delta outside the untilted face, so a tilt theta keeps it
  // rho * sin(delta + theta) away. Returns at depth >= z_e are at least r
  // beyond the base and need no tilt. One virtual line just outside the
  // image at depth l stands in for the unseen space beyond each border.
  const int w = cam.width();
  const int h = cam.height();
  const float lf = static_cast<float>(l);
  std::vector<float> col_min(static_cast<std::size_t>(w), kInf);
  for (int v = 0; v < h; ++v) {
    const auto row = image.row(v);
    if (rc.x0 > 0) simd::merge_min(std::span<float>(col_min).first(rc.x0), row.first(rc.x0), free_depth);
    if (rc.x1 < w - 1) {
      simd::merge_min(std::span<float>(col_min).subspan(rc.x1 + 1), row.subspan(rc.x1 + 1), free_depth);
    }
  }

  const double edge_left = std::atan(a_lo);
  const double edge_right = std::atan(a_hi);
  const double edge_top = std::atan(b_lo);
  const double edge_bottom = std::atan(b_hi);
  auto required = [r, z_e](double& tilt, double edge, double slope, float depth) {
    const double d = static_cast<double>(depth);
    if (!(d < z_e)) return;
    const double rho = d * std::sqrt(1.0 + slope * slope);
    const double delta = std::abs(edge - std::atan(slope));
    tilt = std::max(tilt, std::asin(std::min(1.0, r / rho)) - delta);
  };

  std::array<double, 4> tilt{};
  required(tilt[0], edge_left, cam.column_slope(-1.0), lf);
  for (int u = 0; u < rc.x0; ++u) required(tilt[0], edge_left, cam.column_slope(u), col_min[u]);
  required(tilt[1], edge_right, cam.column_slope(w), lf);
  for (int u = rc.x1 + 1; u < w; ++u) required(tilt[1], edge_right, cam.column_slope(u), col_min[u]);
  required(tilt[2], edge_top, cam.row_slope(-1.0), lf);
  for (int v = 0; v < rc.y0; ++v) {
    required(tilt[2], edge_top, cam.row_slope(v), simd::min_occupied(image.row(v).subspan(rc.x0, rc.width()), free_depth));
  }
  required(tilt[3], edge_bottom, cam.row_slope(h), lf);
  for (int v = rc.y1 + 1; v < h; ++v) {
    required(tilt[3], edge_bottom, cam.row_slope(v),
             simd::min_occupied(image.row(v).subspan(rc.x0, rc.width()), free_depth));
  }
  // A hair of extra tilt absorbs rounding in the angle arithmetic.
  constexpr double kAngleSlack = 1e-9;
  for (double& t : tilt) t = std::max(0.0, t) + kAngleSlack;

  const double left = edge_left + tilt[0];
  const double right = edge_right - tilt[1];
  const double top = edge_top + tilt[2];
  const double bottom = edge_bottom - tilt[3];
  if (!(left < right && top < bottom)) return InflateFailure::BandTooClose;

  Pyramid p;
  p.expanded_rect = rc;
  p.expanded_depth = z_e;
  p.base_depth = z_e - r;
  p.lateral_normals[0] = face_normal(0, std::tan(left), 1.0);
  p.lateral_normals[1] = face_normal(0, std::tan(right), -1.0);
  p.lateral_normals[2] = face_normal(1, std::tan(top), 1.0);
  p.lateral_normals[3] = face_normal(1, std::tan(bottom), -1.0);
  if (!p.contains(s)) return InflateFailure::NotContained;
  return p;
}

}  // namespace pyramidplan
