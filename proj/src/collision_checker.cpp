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

#include "pyramidplan/collision_checker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pyramidplan {

SectionExit deepest_collision_time(const Pyramid& pyramid, const Trajectory& traj, const MonotonicSection& section) {
  const double deep = section.deepest_time();
  SectionExit out;
  double best_gap = std::numeric_limits<double>::infinity();
  for (const Vec3& n : pyramid.lateral_normals) {
    const RootSet roots = plane_crossings(traj, n, section.t_start, section.t_end);
    if (roots.everywhere_zero()) {
      out.kind = SectionExit::Kind::InPlane;
      out.time = section.shallowest_time();
      return out;
    }
    // Depth is monotone over the section, so the deepest crossing is the
    // one closest in time to the deep end.
    for (double t : roots) {
      const double gap = std::abs(deep - t);
      if (gap < best_gap) {
        best_gap = gap;
        out.kind = SectionExit::Kind::Exits;
        out.time = t;
      }
    }
  }
  return out;
}

std::optional<double> deepest_collision_instant(const Pyramid& pyramid, const Trajectory& traj,
                                                const MonotonicSection& section) {
  const SectionExit e = deepest_collision_time(pyramid, traj, section);
  if (e.kind == SectionExit::Kind::Inside) return std::nullopt;
  return e.time;
}

bool is_collision_free(const Trajectory& traj, PyramidStore& store, const DepthImage& image,
                       const CollisionParams& params) {
  // A sub-section's deepest point lies on a face of the pyramid that split
  // it off, so that pyramid is skipped when the sub-section is revisited.
  struct WorkItem {
    MonotonicSection section;
    std::size_t skip;
  };
  constexpr std::size_t kNoSkip = static_cast<std::size_t>(-1);
  const double stall_tol = 1e-9 * std::max(1.0, traj.duration());

  StaticVector<WorkItem, SectionList::capacity()> work;
  for (const MonotonicSection& s : monotonic_sections(traj, Vec3(0.0, 0.0, 1.0))) work.push_back({s, kNoSkip});

  for (int visits = 0; !work.empty(); ++visits) {
    if (visits >= kMaxSectionVisits) return false;
    const WorkItem item = work.pop_back();
    const MonotonicSection& sec = item.section;
    const double deep_t = sec.deepest_time();
    const Vec3 deepest = traj.position(deep_t);

    // A pyramid that only grazes the deepest point exits right there and
    // covers nothing; such pyramids are passed over.
    auto useful = [&](const SectionExit& e) {
      return e.kind != SectionExit::Kind::Exits || std::abs(e.time - deep_t) > stall_tol;
    };

    std::size_t index = kNoSkip;
    SectionExit exit;
    const std::vector<Pyramid>& all = store.pyramids();
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (i == item.skip || !all[i].contains(deepest)) continue;
      const SectionExit e = deepest_collision_time(all[i], traj, sec);
      if (useful(e)) {
        index = i;
        exit = e;
        break;
      }
    }
    if (index == kNoSkip) {
      if (params.max_pyramids && store.size() >= *params.max_pyramids) return false;
      const InflateResult res = inflate_pyramid(deepest, image, params.vehicle_radius, params.max_pyramid_depth);
      if (!std::holds_alternative<Pyramid>(res)) return false;
      store.push(std::get<Pyramid>(res));
      index = store.size() - 1;
      exit = deepest_collision_time(store.pyramids()[index], traj, sec);
      if (!useful(exit)) return false;
    }

    switch (exit.kind) {
      case SectionExit::Kind::Inside:
        break;
      case SectionExit::Kind::InPlane:
        return false;
      case SectionExit::Kind::Exits: {
        MonotonicSection rest = sec;
        if (sec.deepest_end == DepthEnd::AtEnd) {
          rest.t_end = exit.time;
        } else {
          rest.t_start = exit.time;
        }
        if (!(rest.t_end > rest.t_start)) return false;
        work.push_back({rest, index});
        break;
      }
    }
  }
  return true;
}

}  // namespace pyramidplan
