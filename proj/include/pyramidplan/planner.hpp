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
#include <functional>
#include <optional>
#include <utility>

#include "json.hpp"
#include "pyramidplan/collision_checker.hpp"
#include "pyramidplan/scene.hpp"

namespace pyramidplan {

//! Planning time limit: wall-clock seconds, or a fixed number of
//! candidates for reproducible runs.
struct Budget {
  enum class Mode { WallClock, Candidates };
  Mode mode = Mode::WallClock;
  double seconds = 0.030;
  std::uint64_t candidates = 0;

  static Budget wall_clock(double s) { return {Mode::WallClock, s, 0}; }
  static Budget candidate_count(std::uint64_t n) { return {Mode::Candidates, 0.0, n}; }
  bool is_empty() const { return mode == Mode::WallClock ? !(seconds > 0.0) : candidates == 0; }
};

struct PlannerConfig {
  CollisionParams collision;
  Vec3 exploration_direction = Vec3(0.0, 0.0, 1.0);
  std::pair<double, double> endpoint_depth_range{1.5, 3.0};  // m
  std::pair<double, double> duration_range{2.0, 3.0};        // s
  Budget budget;
  //! Gravity expressed in the camera frame (y_C points down).
  DynamicLimits limits{2.0, 20.0, 3.0, Vec3(0.0, 9.81, 0.0)};
  std::uint64_t seed = 0;

  //! Throws std::invalid_argument on empty or non-positive ranges or r <= 0.
  void validate() const;
};

enum class CandidateOutcome { CostPruned, Infeasible, InCollision, CollisionFree };

const char* to_string(CandidateOutcome o);

struct PlannerReport {
  std::optional<Trajectory> best;
  double best_cost = 0.0;
  std::uint64_t candidates = 0;
  std::uint64_t cost_pruned = 0;
  std::uint64_t infeasible = 0;     // includes indeterminate verdicts
  std::uint64_t indeterminate = 0;
  std::uint64_t collision_checked = 0;
  std::uint64_t collision_free = 0;
  std::uint64_t pyramids = 0;
  double elapsed_s = 0.0;
};

//! Endpoint deprojected from a uniformly drawn pixel at a uniformly drawn
//! depth, reached at rest after a uniformly drawn duration. state is the
//! camera-frame initial state (position at the focal point).
Trajectory sample_candidate(Rng& rng, const VehicleState& state, const DepthImage& image, const PlannerConfig& cfg);

//! d . (s(0) - s(T)) / T; lower is better.
double cost(const Trajectory& traj, const Vec3& d);

using CandidateObserver = std::function<void(const Trajectory&, CandidateOutcome)>;

//! Random search for the lowest-cost trajectory that is dynamically
//! feasible and collision free, within cfg.budget. Candidates are tested
//! for cost, then feasibility, then collisions. Equal costs keep the first
//! candidate found.
PlannerReport find_lowest_cost_trajectory(const VehicleState& state, const DepthImage& image,
                                          const PlannerConfig& cfg, const CandidateObserver& observer = {});

nlohmann::json trajectory_to_json(const Trajectory& traj);
Trajectory trajectory_from_json(const nlohmann::json& j);
nlohmann::json planner_config_to_json(const PlannerConfig& cfg);
nlohmann::json report_to_json(const PlannerReport& report, const PlannerConfig& cfg);

}  // namespace pyramidplan
