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

#include "pyramidplan/planner.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>

namespace pyramidplan {

void PlannerConfig::validate() const {
  if (!(collision.vehicle_radius > 0.0)) throw std::invalid_argument("vehicle radius must be positive");
  if (!(endpoint_depth_range.first > 0.0 && endpoint_depth_range.second >= endpoint_depth_range.first)) {
    throw std::invalid_argument("endpoint depth range must be positive and nonempty");
  }
  if (!(duration_range.first > 0.0 && duration_range.second >= duration_range.first)) {
    throw std::invalid_argument("duration range must be positive and nonempty");
  }
  if (!exploration_direction.allFinite()) throw std::invalid_argument("exploration direction must be finite");
}

const char* to_string(CandidateOutcome o) {
  switch (o) {
    case CandidateOutcome::CostPruned:
      return "cost-pruned";
    case CandidateOutcome::Infeasible:
      return "infeasible";
    case CandidateOutcome::InCollision:
      return "in-collision";
    case CandidateOutcome::CollisionFree:
      return "collision-free";
  }
  return "unknown";
}

Trajectory sample_candidate(Rng& rng, const VehicleState& state, const DepthImage& image, const PlannerConfig& cfg) {
  const CameraModel& cam = image.camera();
  std::uniform_real_distribution<double> u_dist(0.0, cam.width() - 1.0);
  std::uniform_real_distribution<double> v_dist(0.0, cam.height() - 1.0);
  std::uniform_real_distribution<double> depth_dist(cfg.endpoint_depth_range.first, cfg.endpoint_depth_range.second);
  std::uniform_real_distribution<double> t_dist(cfg.duration_range.first, cfg.duration_range.second);
  const double u = u_dist(rng);
  const double v = v_dist(rng);
  const double depth = depth_dist(rng);
  const double T = t_dist(rng);
  return Trajectory::from_boundary(state, VehicleState::at_rest(cam.deproject(u, v, depth)), T);
}

double cost(const Trajectory& traj, const Vec3& d) {
  const double T = traj.duration();
  return d.dot(traj.initial_state().position - traj.position(T)) / T;
}

PlannerReport find_lowest_cost_trajectory(const VehicleState& state, const DepthImage& image,
                                          const PlannerConfig& cfg, const CandidateObserver& observer) {
  using Clock = std::chrono::steady_clock;
  cfg.validate();
  PlannerReport rep;
  if (cfg.budget.is_empty()) return rep;

  const auto start = Clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
  const bool wall = cfg.budget.mode == Budget::Mode::WallClock;

  Rng rng(cfg.seed);
  PyramidStore store;
  double best_cost = std::numeric_limits<double>::infinity();
  auto notify = [&](const Trajectory& t, CandidateOutcome o) {
    if (observer) observer(t, o);
  };

  while (wall ? elapsed() < cfg.budget.seconds : rep.candidates < cfg.budget.candidates) {
    const Trajectory cand = sample_candidate(rng, state, image, cfg);
    ++rep.candidates;
    const double c = cost(cand, cfg.exploration_direction);
    if (!(c < best_cost)) {
      ++rep.cost_pruned;
      notify(cand, CandidateOutcome::CostPruned);
      continue;
    }
    const Feasibility feas = feasibility_check(cand, cfg.limits);
    if (feas != Feasibility::Feasible) {
      ++rep.infeasible;
      if (feas == Feasibility::Indeterminate) ++rep.indeterminate;
      notify(cand, CandidateOutcome::Infeasible);
      continue;
    }
    ++rep.collision_checked;
    if (!is_collision_free(cand, store, image, cfg.collision)) {
      notify(cand, CandidateOutcome::InCollision);
      continue;
    }
    ++rep.collision_free;
    best_cost = c;
    rep.best = cand;
    rep.best_cost = c;
    notify(cand, CandidateOutcome::CollisionFree);
  }
  rep.pyramids = store.size();
  rep.elapsed_s = elapsed();
  return rep;
}

namespace {

nlohmann::json vec_json(const Vec3& v) { return nlohmann::json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3-vector");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

nlohmann::json state_json(const VehicleState& s) {
  return {{"position", vec_json(s.position)},
          {"velocity", vec_json(s.velocity)},
          {"acceleration", vec_json(s.acceleration)}};
}

}  // namespace

nlohmann::json trajectory_to_json(const Trajectory& traj) {
  return {{"alpha", vec_json(traj.alpha())},
          {"beta", vec_json(traj.beta())},
          {"gamma", vec_json(traj.gamma())},
          {"duration", traj.duration()},
          {"initial", state_json(traj.initial_state())},
          {"final", state_json(traj.final_state())}};
}

Trajectory trajectory_from_json(const nlohmann::json& j) {
  VehicleState init;
  const auto& i = j.at("initial");
  init.position = vec_from(i.at("position"));
  init.velocity = vec_from(i.at("velocity"));
  init.acceleration = vec_from(i.at("acceleration"));
  return Trajectory(vec_from(j.at("alpha")), vec_from(j.at("beta")), vec_from(j.at("gamma")), init,
                    j.at("duration").get<double>());
}

nlohmann::json planner_config_to_json(const PlannerConfig& cfg) {
  nlohmann::json budget;
  if (cfg.budget.mode == Budget::Mode::WallClock) {
    budget = {{"mode", "wall_clock"}, {"seconds", cfg.budget.seconds}};
  } else {
    budget = {{"mode", "candidates"}, {"candidates", cfg.budget.candidates}};
  }
  nlohmann::json j = {
      {"vehicle_radius", cfg.collision.vehicle_radius},
      {"max_pyramid_depth", cfg.collision.max_pyramid_depth},
      {"max_pyramids", cfg.collision.max_pyramids ? nlohmann::json(*cfg.collision.max_pyramids) : nlohmann::json()},
      {"exploration_direction", vec_json(cfg.exploration_direction)},
      {"endpoint_depth_range", {cfg.endpoint_depth_range.first, cfg.endpoint_depth_range.second}},
      {"duration_range", {cfg.duration_range.first, cfg.duration_range.second}},
      {"budget", budget},
      {"limits",
       {{"f_min", cfg.limits.f_min},
        {"f_max", cfg.limits.f_max},
        {"omega_max", cfg.limits.omega_max},
        {"gravity", vec_json(cfg.limits.gravity)}}},
      {"seed", cfg.seed}};
  return j;
}

nlohmann::json report_to_json(const PlannerReport& report, const PlannerConfig& cfg) {
  return {{"config", planner_config_to_json(cfg)},
          {"best", report.best ? trajectory_to_json(*report.best) : nlohmann::json()},
          {"best_cost", report.best ? nlohmann::json(report.best_cost) : nlohmann::json()},
          {"candidates", report.candidates},
          {"cost_pruned", report.cost_pruned},
          {"infeasible", report.infeasible},
          {"indeterminate", report.indeterminate},
          {"collision_checked", report.collision_checked},
          {"collision_free", report.collision_free},
          {"pyramids", report.pyramids},
          {"elapsed_s", report.elapsed_s}};
}

}  // namespace pyramidplan
