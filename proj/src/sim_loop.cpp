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

#include "pyramidplan/sim_loop.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "pyramidplan/seeding.hpp"

namespace pyramidplan {

namespace {

Box aabb(const Vec3& lo, const Vec3& hi) {
  Box b;
  b.center = 0.5 * (lo + hi);
  b.half_extents = 0.5 * (hi - lo);
  return b;
}

nlohmann::json vec_json(const Vec3& v) { return nlohmann::json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3-vector");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

}  // namespace

SimWorld make_u_tunnel(const TunnelParams& p) {
  const double L = p.leg_length;
  const double w = p.width;
  const double h = p.height;
  const double t = p.wall;
  const double hw = 0.5 * w;
  // Leg 1: y in [-hw, hw]. Divider: y in [-hw - t, -hw]. Leg 2 below it.
  const double leg2_hi = -hw - t;
  const double leg2_lo = leg2_hi - w;
  const double x_end = L + w;  // inner face of the far wall

  SimWorld world;
  Scene& s = world.scene;
  const double y_lo = leg2_lo - t;
  const double y_hi = hw + t;
  s.boxes.push_back(aabb({-t, y_lo, -t}, {x_end + t, y_hi, 0.0}));    // floor
  s.boxes.push_back(aabb({-t, y_lo, h}, {x_end + t, y_hi, h + t}));   // ceiling
  s.boxes.push_back(aabb({-t, hw, 0.0}, {x_end + t, y_hi, h}));       // north wall
  s.boxes.push_back(aabb({-t, y_lo, 0.0}, {x_end + t, leg2_lo, h}));  // south wall
  s.boxes.push_back(aabb({x_end, y_lo, 0.0}, {x_end + t, y_hi, h}));  // far wall
  s.boxes.push_back(aabb({-t, y_lo, 0.0}, {0.0, y_hi, h}));           // near wall
  s.boxes.push_back(aabb({0.0, leg2_hi, 0.0}, {L, -hw, h}));          // divider

  Rng rng(p.clutter_seed);
  std::uniform_real_distribution<double> along(2.5, L - 1.0);
  std::uniform_real_distribution<double> thick(0.2, 0.6);
  std::uniform_real_distribution<double> reach(0.3, 0.8);
  std::uniform_int_distribution<int> side(0, 3);
  for (int leg = 0; leg < 2; ++leg) {
    const double lo_y = leg == 0 ? -hw : leg2_lo;
    const double hi_y = leg == 0 ? hw : leg2_hi;
    for (int i = 0; i < p.clutter_per_leg; ++i) {
      // Leg 2 is flown towards -x, so its clutter is mirrored along x.
      double x = along(rng);
      if (leg == 1) x = L + 1.5 - x;
      const double dx = 0.5 * thick(rng);
      const double r = reach(rng);
      Vec3 lo(x - dx, lo_y, 0.0);
      Vec3 hi(x + dx, hi_y, h);
      switch (side(rng)) {
        case 0:
          lo.y() = hi_y - r;
          break;
        case 1:
          hi.y() = lo_y + r;
          break;
        case 2:
          hi.z() = r;
          break;
        default:
          lo.z() = h - r;
          break;
      }
      s.boxes.push_back(aabb(lo, hi));
    }
  }

  world.start_position = Vec3(1.0, 0.0, 0.5 * h);
  world.start_yaw = 0.0;
  world.initial_direction = Vec3(1.0, 0.0, 0.0);
  world.goal_min = Vec3(0.0, leg2_lo, 0.0);
  world.goal_max = Vec3(1.5, leg2_hi, h);
  return world;
}

SimWorld world_from_json(const nlohmann::json& j) {
  SimWorld w;
  w.scene = scene_from_json(j);
  try {
    if (j.contains("start")) w.start_position = vec_from(j["start"]);
    if (j.contains("start_yaw")) w.start_yaw = j["start_yaw"].get<double>();
    if (j.contains("direction")) w.initial_direction = vec_from(j["direction"]).normalized();
    if (j.contains("goal_min")) w.goal_min = vec_from(j["goal_min"]);
    if (j.contains("goal_max")) w.goal_max = vec_from(j["goal_max"]);
    if (j.contains("frame_rate")) w.frame_rate = j["frame_rate"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed world JSON: ") + e.what());
  }
  if (!(w.frame_rate > 0.0)) throw std::invalid_argument("frame rate must be positive");
  return w;
}

nlohmann::json world_to_json(const SimWorld& w) {
  nlohmann::json j = scene_to_json(w.scene);
  j["start"] = vec_json(w.start_position);
  j["start_yaw"] = w.start_yaw;
  j["direction"] = vec_json(w.initial_direction);
  j["goal_min"] = vec_json(w.goal_min);
  j["goal_max"] = vec_json(w.goal_max);
  j["frame_rate"] = w.frame_rate;
  return j;
}

SimWorld load_world(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open world file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed world JSON: ") + e.what());
  }
  return world_from_json(j);
}

SimState initial_state(const SimWorld& world) {
  SimState s;
  s.vehicle = VehicleState::at_rest(world.start_position);
  s.yaw = world.start_yaw;
  s.direction = world.initial_direction.normalized();
  return s;
}

Vec3 update_exploration_direction(const SimState& state) {
  if (!(state.at_rest() && !state.last_plan_ok)) return state.direction;
  const Vec3& d = state.direction;
  return Vec3(d.y(), -d.x(), d.z());
}

Mat3 camera_rotation(double yaw) {
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  Mat3 R;
  R.col(0) = Vec3(s, -c, 0.0);
  R.col(1) = Vec3(0.0, 0.0, -1.0);
  R.col(2) = Vec3(c, s, 0.0);
  return R;
}

SimState step(const SimWorld& world, const SimConfig& cfg, const SimState& state, FrameRecord* record) {
  const Mat3 R = camera_rotation(state.yaw);
  const Mat3 Rt = R.transpose();
  const Vec3& p = state.vehicle.position;

  const DepthImage image = render(world.scene.transformed(Rt, -Rt * p), world.camera);

  VehicleState cam_state;
  cam_state.velocity = Rt * state.vehicle.velocity;
  cam_state.acceleration = Rt * state.vehicle.acceleration;

  PlannerConfig pc;
  pc.collision.vehicle_radius = cfg.vehicle_radius + cfg.planning_margin;
  pc.collision.max_pyramid_depth = world.camera.unknown_horizon();
  pc.exploration_direction = Rt * state.direction;
  pc.endpoint_depth_range = cfg.endpoint_depth_range;
  pc.duration_range = cfg.duration_range;
  pc.budget = cfg.budget;
  pc.limits = cfg.limits;
  pc.limits.gravity = Rt * cfg.limits.gravity;
  pc.seed = sub_seed(cfg.seed, static_cast<std::uint64_t>(state.frame));
  const PlannerReport rep = find_lowest_cost_trajectory(cam_state, image, pc);

  SimState next = state;
  next.last_plan_ok = rep.best.has_value();
  if (rep.best) {
    next.active = rep.best->transformed(R, p);
    next.active_time = 0.0;
    ++next.active_id;
  }
  next.direction = update_exploration_direction(next);

  if (record) {
    record->frame = state.frame;
    record->time = state.time;
    record->position = state.vehicle.position;
    record->velocity = state.vehicle.velocity;
    record->yaw = state.yaw;
    record->direction = next.direction;
    record->at_rest = state.at_rest();
    record->plan_success = next.last_plan_ok;
    record->direction_rotated = !(next.direction == state.direction);
    record->candidates = rep.candidates;
    record->collision_free = rep.collision_free;
    record->pyramids = rep.pyramids;
    record->planner_elapsed_s = rep.elapsed_s;
    record->active_id = next.active_id;
    record->new_trajectory = rep.best ? next.active : std::nullopt;
  }

  const double dt = 1.0 / world.frame_rate;
  if (next.active) {
    next.active_time += dt;
    if (next.active_time >= next.active->duration()) {
      next.vehicle = VehicleState::at_rest(next.active->final_state().position);
      next.active.reset();
    } else {
      next.vehicle = next.active->state_at(next.active_time);
    }
  }
  ++next.frame;
  next.time = next.frame * dt;

  const Vec3& v = next.vehicle.velocity;
  const double horizontal = std::hypot(v.x(), v.y());
  if (horizontal > cfg.heading_speed) {
    next.yaw = std::atan2(v.y(), v.x());
  } else if (next.at_rest()) {
    next.yaw = std::atan2(next.direction.y(), next.direction.x());
  }

  if (record) {
    record->speed = next.vehicle.velocity.norm();
    record->clearance = world.scene.distance(next.vehicle.position);
  }
  return next;
}

SimSummary summarize(const std::vector<FrameRecord>& frames, double vehicle_radius, bool reached_goal) {
  SimSummary s;
  s.frames = static_cast<int>(frames.size());
  s.reached_goal = reached_goal;
  s.min_clearance = std::numeric_limits<double>::infinity();
  if (frames.empty()) return s;
  int successes = 0;
  double cand = 0.0;
  double pyr = 0.0;
  Vec3 prev = frames.front().position;
  for (const FrameRecord& f : frames) {
    successes += f.plan_success ? 1 : 0;
    cand += static_cast<double>(f.candidates);
    pyr += static_cast<double>(f.pyramids);
    s.max_speed = std::max(s.max_speed, f.speed);
    s.distance_traveled += (f.position - prev).norm();
    prev = f.position;
    s.min_clearance = std::min(s.min_clearance, f.clearance);
    s.direction_rotations += f.direction_rotated ? 1 : 0;
    s.safety_violations += f.clearance < vehicle_radius * (1.0 - 1e-3) ? 1 : 0;
  }
  const double n = static_cast<double>(frames.size());
  s.success_fraction = successes / n;
  s.mean_candidates = cand / n;
  s.mean_pyramids = pyr / n;
  return s;
}

SimLog run(const SimWorld& world, const SimConfig& cfg, int max_frames) {
  if (max_frames <= 0) throw std::invalid_argument("max_frames must be positive");
  if (world.scene.distance(world.start_position) < cfg.vehicle_radius) {
    throw std::invalid_argument("start position is closer than the vehicle radius to the world");
  }
  SimLog log;
  SimState state = initial_state(world);
  bool reached = world.in_goal(state.vehicle.position);
  const double limit = cfg.vehicle_radius * (1.0 - 1e-3);
  for (int k = 0; k < max_frames && !reached; ++k) {
    FrameRecord rec;
    state = step(world, cfg, state, &rec);
    log.frames.push_back(rec);
    if (rec.clearance < limit) {
      const Vec3& q = state.vehicle.position;
      log.diagnostic = "clearance " + std::to_string(rec.clearance) + " m below radius at frame " +
                       std::to_string(rec.frame) + ", position (" + std::to_string(q.x()) + ", " +
                       std::to_string(q.y()) + ", " + std::to_string(q.z()) + ")";
      break;
    }
    reached = world.in_goal(state.vehicle.position);
  }
  log.final_position = state.vehicle.position;
  log.summary = summarize(log.frames, cfg.vehicle_radius, reached);
  return log;
}

nlohmann::json frame_to_json(const FrameRecord& f) {
  nlohmann::json j = {{"frame", f.frame},
                      {"time", f.time},
                      {"position", vec_json(f.position)},
                      {"velocity", vec_json(f.velocity)},
                      {"yaw", f.yaw},
                      {"direction", vec_json(f.direction)},
                      {"at_rest", f.at_rest},
                      {"plan_success", f.plan_success},
                      {"direction_rotated", f.direction_rotated},
                      {"candidates", f.candidates},
                      {"collision_free", f.collision_free},
                      {"pyramids", f.pyramids},
                      {"planner_elapsed_s", f.planner_elapsed_s},
                      {"active_id", f.active_id},
                      {"speed", f.speed},
                      {"clearance", f.clearance}};
  j["new_trajectory"] = f.new_trajectory ? trajectory_to_json(*f.new_trajectory) : nlohmann::json();
  return j;
}

nlohmann::json summary_to_json(const SimSummary& s) {
  return {{"frames", s.frames},
          {"success_fraction", s.success_fraction},
          {"mean_candidates", s.mean_candidates},
          {"mean_pyramids", s.mean_pyramids},
          {"max_speed", s.max_speed},
          {"distance_traveled", s.distance_traveled},
          {"min_clearance", s.min_clearance},
          {"direction_rotations", s.direction_rotations},
          {"safety_violations", s.safety_violations},
          {"reached_goal", s.reached_goal}};
}

void write_sim_log(const SimLog& log, const std::filesystem::path& jsonl_path,
                   const std::filesystem::path& summary_path) {
  std::ofstream out(jsonl_path);
  if (!out) throw std::runtime_error("cannot write " + jsonl_path.string());
  for (const FrameRecord& f : log.frames) out << frame_to_json(f).dump() << '\n';
  std::ofstream sum(summary_path);
  if (!sum) throw std::runtime_error("cannot write " + summary_path.string());
  nlohmann::json j = summary_to_json(log.summary);
  j["final_position"] = vec_json(log.final_position);
  j["diagnostic"] = log.diagnostic;
  sum << j.dump(2) << '\n';
}

}  // namespace pyramidplan
