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

#include <cstddef>
#include <optional>

#include "pyramidplan/pyramid.hpp"

namespace pyramidplan {

struct CollisionParams {
  double vehicle_radius = 0.3;        // m
  double max_pyramid_depth = 10.0;    // m
  std::optional<std::size_t> max_pyramids;  // inflation refused once the store holds this many
};

//! Outcome of intersecting a monotonic section with a pyramid's faces.
struct SectionExit {
  enum class Kind { Inside, Exits, InPlane };
  Kind kind = Kind::Inside;
  //! Deepest lateral-face crossing when kind == Exits.
  double time = 0.0;
};

//! Lateral-face crossing of the section with the greatest depth. Inside
//! certifies the whole section stays in the pyramid, given that its
//! deepest end does. InPlane is reported when the section lies in a face
//! plane. t = 0 is never a crossing.
SectionExit deepest_collision_time(const Pyramid& pyramid, const Trajectory& traj, const MonotonicSection& section);

//! Convenience form: nullopt for Inside, the crossing time for Exits and
//! the section's shallow end for InPlane.
std::optional<double> deepest_collision_instant(const Pyramid& pyramid, const Trajectory& traj,
                                                const MonotonicSection& section);

//! Upper bound on sections processed for one trajectory before it is
//! declared in collision.
inline constexpr int kMaxSectionVisits = 64;

//! Pyramid-based collision check of a camera-frame trajectory whose
//! initial position is the apex (the focal point). Appends any pyramids it
//! inflates to store. True only if every part of the trajectory is shown
//! to lie inside some pyramid.
bool is_collision_free(const Trajectory& traj, PyramidStore& store, const DepthImage& image,
                       const CollisionParams& params);

}  // namespace pyramidplan
