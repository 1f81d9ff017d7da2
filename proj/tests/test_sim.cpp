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

#include <gtest/gtest.h>

#include <Eigen/Geometry>
#include <Eigen/LU>

#include <cmath>
#include <stdexcept>

#include "pyramidplan/seeding.hpp"
#include "pyramidplan/sim_loop.hpp"

namespace pyramidplan {
namespace {

Box aabb(const Vec3& lo, const Vec3& hi) {
  Box b;
  b.center = 0.5 * (lo + hi);
  b.half_extents = 0.5 * (hi - lo);
  return b;
}

// A closed 2 m cube of 0.2 m walls around the point c.
SimWorld walled_in(const Vec3& c) {
  SimWorld w;
  const double a = 1.0;
  const double t = 0.2;
  Scene& s = w.scene;
  s.boxes.push_back(aabb(c + Vec3(-a - t, -a - t, -a - t), c + Vec3(a + t, a + t, -a)));
  s.boxes.push_back(aabb(c + Vec3(-a - t, -a - t, a), c + Vec3(a + t, a + t, a + t)));
  s.boxes.push_back(aabb(c + Vec3(-a - t, -a - t, -a), c + Vec3(-a, a + t, a)));
  s.boxes.push_back(aabb(c + Vec3(a, -a - t, -a), c + Vec3(a + t, a + t, a)));
  s.boxes.push_back(aabb(c + Vec3(-a, -a - t, -a), c + Vec3(a, -a, a)));
  s.boxes.push_back(aabb(c + Vec3(-a, a, -a), c + Vec3(a, a + t, a)));
  w.start_position = c;
  return w;
}

SimConfig quick_config(std::uint64_t seed) {
  SimConfig cfg;
  cfg.seed = seed;
  cfg.budget = Budget::candidate_count(300);
  return cfg;
}

TEST(ExplorationDirection, RotationRule) {
  SimState s;
  s.direction = Vec3(1, 0, 0);
  s.last_plan_ok = false;
  s.active = Trajectory::from_boundary(VehicleState::at_rest(Vec3::Zero()), VehicleState::at_rest(Vec3(1, 0, 0)), 1.0);
  EXPECT_EQ(update_exploration_direction(s), s.direction);  // moving
  s.active.reset();
  s.last_plan_ok = true;
  EXPECT_EQ(update_exploration_direction(s), s.direction);  // at rest, plan found
  s.last_plan_ok = false;
  const Vec3 d = update_exploration_direction(s);
  EXPECT_EQ(d.dot(Vec3(1, 0, 0)), 0.0);
  EXPECT_EQ(d.z(), 0.0);
  // Right of a +x heading in a z-up frame is -y.
  EXPECT_EQ(d, Vec3(0, -1, 0));
  EXPECT_GT(Vec3(1, 0, 0).cross(d).dot(Vec3(0, 0, -1)), 0.0);
  SimState r = s;
  r.direction = Vec3(0.6, 0.8, 0);
  for (int i = 0; i < 4; ++i) r.direction = update_exploration_direction(r);
  EXPECT_LT((r.direction - Vec3(0.6, 0.8, 0)).norm(), 1e-12);
}

TEST(CameraRotation, LooksAlongHeadingWithYDown) {
  for (double yaw : {0.0, 0.3, -2.0, 3.1}) {
    const Mat3 R = camera_rotation(yaw);
    EXPECT_LT((R.transpose() * R - Mat3::Identity()).norm(), 1e-15);
    EXPECT_NEAR(R.determinant(), 1.0, 1e-15);
    EXPECT_LT((R.col(2) - Vec3(std::cos(yaw), std::sin(yaw), 0)).norm(), 1e-15);
    EXPECT_EQ(R.col(1), Vec3(0, 0, -1));
  }
}

TEST(Step, EmptyWorldMovesAlongDirection) {
  SimWorld w;
  w.start_position = Vec3(0, 0, 1);
  const SimConfig cfg = quick_config(1);
  SimState s = initial_state(w);
  FrameRecord rec;
  s = step(w, cfg, s, &rec);
  EXPECT_TRUE(rec.plan_success);
  EXPECT_TRUE(rec.at_rest);
  for (int i = 0; i < 30; ++i) s = step(w, cfg, s);
  EXPECT_GT(s.vehicle.position.x(), 0.1);
  EXPECT_LT(std::abs(s.vehicle.position.y()), s.vehicle.position.x());
}

TEST(Step, WallAheadKeepsVehicleAtRest) {
  SimWorld w;
  w.start_position = Vec3(0, 0, 1);
  w.scene.boxes.push_back(aabb(Vec3(1.0, -20, -20), Vec3(1.2, 20, 20)));
  SimConfig cfg = quick_config(2);
  SimState s = initial_state(w);
  FrameRecord rec;
  s = step(w, cfg, s, &rec);
  EXPECT_FALSE(rec.plan_success);
  EXPECT_TRUE(rec.direction_rotated);
  EXPECT_EQ(s.vehicle.position, w.start_position);
  EXPECT_TRUE(s.at_rest());
}

TEST(Run, WalledInVehicleStaysPutAndRotates) {
  const SimWorld w = walled_in(Vec3(0, 0, 1));
  const SimLog log = run(w, quick_config(3), 12);
  ASSERT_EQ(log.frames.size(), 12u);
  EXPECT_TRUE(log.diagnostic.empty());
  Vec3 d = w.initial_direction;
  for (const FrameRecord& f : log.frames) {
    EXPECT_FALSE(f.plan_success);
    EXPECT_TRUE(f.at_rest);
    EXPECT_TRUE(f.direction_rotated);
    EXPECT_EQ(f.position, w.start_position);
    EXPECT_EQ(f.speed, 0.0);
    d = Vec3(d.y(), -d.x(), d.z());
    EXPECT_LT((f.direction - d).norm(), 1e-12);
  }
  EXPECT_EQ(log.final_position, w.start_position);
  EXPECT_EQ(log.summary.safety_violations, 0);
  EXPECT_EQ(log.summary.direction_rotations, 12);
}

// Replays the chosen trajectories frame by frame.
Vec3 replay(const SimWorld& w, const SimLog& log) {
  std::optional<Trajectory> active;
  double t = 0.0;
  Vec3 p = w.start_position;
  const double dt = 1.0 / w.frame_rate;
  for (const FrameRecord& f : log.frames) {
    EXPECT_LT((f.position - p).norm(), 1e-6) << "frame " << f.frame;
    if (f.new_trajectory) {
      EXPECT_LT((f.new_trajectory->position(0.0) - p).norm(), 1e-9);
      active = f.new_trajectory;
      t = 0.0;
    }
    if (active) {
      t += dt;
      if (t >= active->duration()) {
        p = active->position(active->duration());
        active.reset();
      } else {
        p = active->position(t);
      }
    }
  }
  return p;
}

class TunnelRun : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    TunnelParams tp;
    tp.clutter_per_leg = 3;
    tp.clutter_seed = 5;
    world_ = new SimWorld(make_u_tunnel(tp));
    log_ = new SimLog(run(*world_, quick_config(5), 1500));
  }
  static void TearDownTestSuite() {
    delete world_;
    delete log_;
  }
  static SimWorld* world_;
  static SimLog* log_;
};
SimWorld* TunnelRun::world_ = nullptr;
SimLog* TunnelRun::log_ = nullptr;

TEST_F(TunnelRun, SafeAndReplayable) {
  EXPECT_TRUE(log_->diagnostic.empty()) << log_->diagnostic;
  EXPECT_EQ(log_->summary.safety_violations, 0);
  EXPECT_GE(log_->summary.min_clearance, 0.3 * (1 - 1e-3));
  EXPECT_LT((replay(*world_, *log_) - log_->final_position).norm(), 1e-6);
}

TEST_F(TunnelRun, SummaryMatchesFrames) {
  const SimSummary s = summarize(log_->frames, 0.3, log_->summary.reached_goal);
  EXPECT_EQ(summary_to_json(s).dump(), summary_to_json(log_->summary).dump());
}

TEST_F(TunnelRun, RotationOnlyWhenStuck) {
  for (const FrameRecord& f : log_->frames) {
    EXPECT_EQ(f.direction_rotated, f.at_rest && !f.plan_success) << "frame " << f.frame;
  }
}

TEST_F(TunnelRun, Reproducible) {
  const SimLog again = run(*world_, quick_config(5), 1500);
  ASSERT_EQ(again.frames.size(), log_->frames.size());
  for (std::size_t i = 0; i < again.frames.size(); ++i) {
    nlohmann::json a = frame_to_json(again.frames[i]);
    nlohmann::json b = frame_to_json(log_->frames[i]);
    a.erase("planner_elapsed_s");
    b.erase("planner_elapsed_s");
    ASSERT_EQ(a.dump(), b.dump()) << "frame " << i;
  }
  EXPECT_EQ(again.final_position, log_->final_position);
}

TEST(Run, EmptyCorridorReachesGoal) {
  const SimWorld w = make_u_tunnel();
  const SimLog log = run(w, quick_config(6), 2400);
  EXPECT_TRUE(log.diagnostic.empty()) << log.diagnostic;
  EXPECT_TRUE(log.summary.reached_goal);
  EXPECT_TRUE(w.in_goal(log.final_position));
  EXPECT_EQ(log.summary.safety_violations, 0);
}

// Fraction of evaluated candidates found collision-free over a run.
double free_fraction(const SimLog& log) {
  double candidates = 0.0;
  double free = 0.0;
  for (const FrameRecord& f : log.frames) {
    candidates += static_cast<double>(f.candidates);
    free += static_cast<double>(f.collision_free);
  }
  return free / candidates;
}

TEST(Run, ClutterLowersFreeCandidateFraction) {
  double cluttered = 0.0;
  double empty = 0.0;
  for (int k = 0; k < 10; ++k) {
    const std::uint64_t seed = sub_seed(7, k);
    TunnelParams tp;
    tp.clutter_seed = seed;
    tp.clutter_per_leg = 4;
    cluttered += free_fraction(run(make_u_tunnel(tp), quick_config(seed), 150));
    tp.clutter_per_leg = 0;
    empty += free_fraction(run(make_u_tunnel(tp), quick_config(seed), 150));
  }
  EXPECT_LT(cluttered, empty);
}

TEST(Run, WallClockBudgetIsRespected) {
  SimConfig cfg = quick_config(8);
  cfg.budget = Budget::wall_clock(0.005);
  const SimLog log = run(make_u_tunnel(), cfg, 20);
  for (const FrameRecord& f : log.frames) EXPECT_LT(f.planner_elapsed_s, 0.005 + 0.010);
}

TEST(Run, RejectsBadStart) {
  SimWorld w = walled_in(Vec3(0, 0, 1));
  w.start_position = Vec3(0.9, 0, 1);
  EXPECT_THROW(run(w, quick_config(1), 5), std::invalid_argument);
  EXPECT_THROW(run(walled_in(Vec3(0, 0, 1)), quick_config(1), 0), std::invalid_argument);
}

TEST(WorldJson, RoundTrip) {
  TunnelParams tp;
  tp.clutter_per_leg = 2;
  const SimWorld w = make_u_tunnel(tp);
  const SimWorld u = world_from_json(nlohmann::json::parse(world_to_json(w).dump()));
  ASSERT_EQ(u.scene.boxes.size(), w.scene.boxes.size());
  EXPECT_EQ(u.start_position, w.start_position);
  EXPECT_EQ(u.goal_min, w.goal_min);
  EXPECT_EQ(u.goal_max, w.goal_max);
  EXPECT_EQ(u.frame_rate, w.frame_rate);
  EXPECT_EQ(u.initial_direction, w.initial_direction);
}

}  // namespace
}  // namespace pyramidplan
