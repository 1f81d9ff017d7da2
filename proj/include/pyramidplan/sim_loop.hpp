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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pyramidplan/planner.hpp"

namespace pyramidplan {

//! Closed-loop flight through a box world. World frame is z-up; the camera
//! looks along the vehicle heading with x_C to the right and y_C down.
struct SimWorld {
  Scene scene;
  Vec3 start_position = Vec3(1.0, 0.0, 1.25);
  double start_yaw = 0.0;  // rad, heading about world z
  Vec3 initial_direction = Vec3(1.0, 0.0, 0.0);
  double frame_rate = 30.0;  // Hz
  CameraModel camera = CameraModel::with_resolution(160, 120);
  //! Axis-aligned goal region; the run stops once the vehicle is inside.
  Vec3 goal_min = Vec3::Constant(-1e300);
  Vec3 goal_max = Vec3::Constant(-1e300);

  bool in_goal(const Vec3& p) const {
    return (p.array() >= goal_min.array()).all() && (p.array() <= goal_max.array()).all();
  }
};

struct TunnelParams {
  double leg_length = 10.0;  // m
  double width = 2.5;        // m
  double height = 2.5;       // m
  double wall = 0.2;         // m
  int clutter_per_leg = 0;
  std::uint64_t clutter_seed = 0;
};

//! U-shaped corridor: a first leg along +x, a connecting bay, and a second
//! leg back along -x south of a dividing wall. Clutter boxes jut out of
//! the walls, floor or ceiling of both legs. Goal: the last 1.5 m of the
//! second leg.
SimWorld make_u_tunnel(const TunnelParams& params = {});

//! Scene JSON plus optional "start", "start_yaw", "direction", "goal_min",
//! "goal_max" and "frame_rate" keys.
SimWorld world_from_json(const nlohmann::json& j);
nlohmann::json world_to_json(const SimWorld& world);
SimWorld load_world(const std::filesystem::path& path);

struct SimConfig {
  double vehicle_radius = 0.3;   // m; the safety check uses this radius
  double planning_margin = 0.05; // m; added to the radius the planner uses
  Budget budget = Budget::candidate_count(300);
  DynamicLimits limits;          // world frame
  std::pair<double, double> endpoint_depth_range{1.5, 3.0};
  std::pair<double, double> duration_range{2.0, 3.0};
  double heading_speed = 0.1;    // m/s; yaw follows velocity above this
  std::uint64_t seed = 0;
};

struct SimState {
  int frame = 0;
  double time = 0.0;
  VehicleState vehicle;  // world frame
  double yaw = 0.0;
  Vec3 direction = Vec3(1.0, 0.0, 0.0);
  std::optional<Trajectory> active;  // world frame
  double active_time = 0.0;
  int active_id = -1;
  bool last_plan_ok = true;

  //! No trajectory in progress: the vehicle hovers where the last one
  //! ended (or where it started).
  bool at_rest() const { return !active.has_value(); }
};

SimState initial_state(const SimWorld& world);

//! Exploration direction after a planning stage: rotated 90 degrees to
//! the right about world z exactly when the vehicle is at rest and the
//! stage failed, otherwise unchanged.
Vec3 update_exploration_direction(const SimState& state);

//! World-to-camera rotation columns (x_C, y_C, z_C) for a heading.
Mat3 camera_rotation(double yaw);

struct FrameRecord {
  int frame = 0;
  double time = 0.0;  // at the start of the frame
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  double yaw = 0.0;
  Vec3 direction = Vec3::Zero();
  bool at_rest = false;  // no trajectory in progress when planning began
  bool plan_success = false;
  bool direction_rotated = false;
  std::uint64_t candidates = 0;
  std::uint64_t collision_free = 0;
  std::uint64_t pyramids = 0;
  double planner_elapsed_s = 0.0;
  int active_id = -1;
  double speed = 0.0;
  double clearance = 0.0;  // from the pose after the frame's motion
  std::optional<Trajectory> new_trajectory;  // world frame, starts at this frame
};

//! Plans from the current pose and advances one frame period.
SimState step(const SimWorld& world, const SimConfig& cfg, const SimState& state, FrameRecord* record = nullptr);

struct SimSummary {
  int frames = 0;
  double success_fraction = 0.0;
  double mean_candidates = 0.0;
  double mean_pyramids = 0.0;
  double max_speed = 0.0;
  double distance_traveled = 0.0;
  double min_clearance = 0.0;
  int direction_rotations = 0;
  int safety_violations = 0;
  bool reached_goal = false;
};

struct SimLog {
  std::vector<FrameRecord> frames;
  SimSummary summary;
  Vec3 final_position = Vec3::Zero();
  std::string diagnostic;  // set when a safety check failed
};

//! Aggregates recomputed from frame records. reached_goal is taken as
//! given.
SimSummary summarize(const std::vector<FrameRecord>& frames, double vehicle_radius, bool reached_goal);

//! Steps until the goal is reached, max_frames elapse, or a pose comes
//! closer than r * (1 - 1e-3) to the world geometry; the last case stops
//! the run and fills diagnostic.
SimLog run(const SimWorld& world, const SimConfig& cfg, int max_frames);

nlohmann::json frame_to_json(const FrameRecord& f);
nlohmann::json summary_to_json(const SimSummary& s);
void write_sim_log(const SimLog& log, const std::filesystem::path& jsonl_path,
                   const std::filesystem::path& summary_path);

}  // namespace pyramidplan
