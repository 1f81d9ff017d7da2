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

#include <Eigen/Core>

#include "pyramidplan/poly_roots.hpp"
#include "pyramidplan/static_vector.hpp"

namespace pyramidplan {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct VehicleState {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 acceleration = Vec3::Zero();

  bool is_finite() const {
    return position.allFinite() && velocity.allFinite() && acceleration.allFinite();
  }
  static VehicleState at_rest(const Vec3& p) {
    VehicleState s;
    s.position = p;
    return s;
  }
};

//! Quintic position trajectory
//!
//!   s(t) = alpha/120 t^5 + beta/24 t^4 + gamma/6 t^3
//!          + a0/2 t^2 + v0 t + p0,       t in [0, T].
//!
//! alpha, beta and gamma are the fourth, third and second derivatives of
//! the jerk-minimizing acceleration profile; (p0, v0, a0) is the initial
//! state. Immutable once built.
class Trajectory {
 public:
  Trajectory(const Vec3& alpha, const Vec3& beta, const Vec3& gamma, const VehicleState& init,
             double duration);

  //! Minimum-jerk trajectory joining two full states in time T.
  //! Throws std::invalid_argument on non-finite input or T <= 0.
  static Trajectory from_boundary(const VehicleState& init, const VehicleState& final_state,
                                  double duration);

  //! Derivative of the given order (0..3) at t. Throws std::out_of_range
  //! when t is outside [0, T] or order is outside 0..3.
  Vec3 evaluate(double t, int order) const;

  // Unchecked evaluation for inner loops.
  Vec3 position(double t) const {
    return (((alpha_ / 120.0 * t + beta_ / 24.0) * t + gamma_ / 6.0) * t + init_.acceleration / 2.0) * t * t +
           init_.velocity * t + init_.position;
  }
  Vec3 velocity(double t) const {
    return (((alpha_ / 24.0 * t + beta_ / 6.0) * t + gamma_ / 2.0) * t + init_.acceleration) * t + init_.velocity;
  }
  Vec3 acceleration(double t) const {
    return ((alpha_ / 6.0 * t + beta_ / 2.0) * t + gamma_) * t + init_.acceleration;
  }
  Vec3 jerk(double t) const { return (alpha_ / 2.0 * t + beta_) * t + gamma_; }

  VehicleState state_at(double t) const;

  double duration() const { return duration_; }
  const Vec3& alpha() const { return alpha_; }
  const Vec3& beta() const { return beta_; }
  const Vec3& gamma() const { return gamma_; }
  const VehicleState& initial_state() const { return init_; }
  VehicleState final_state() const { return state_at(duration_); }

  //! axis . velocity(t), a quartic in t.
  PolyCoeffs axis_velocity_poly(const Vec3& axis) const;
  //! n . (position(t) - position(0)) / t, the quartic left after factoring
  //! out the root at t = 0 shared by every plane through the initial point.
  PolyCoeffs plane_distance_quotient(const Vec3& n) const;

  //! The same motion expressed in another frame: x' = rotation * x + offset.
  Trajectory transformed(const Mat3& rotation, const Vec3& offset) const;

 private:
  Vec3 alpha_;
  Vec3 beta_;
  Vec3 gamma_;
  VehicleState init_;
  double duration_;
};

enum class DepthEnd { AtStart, AtEnd };

//! Interval of a trajectory on which the depth along an axis is monotone.
struct MonotonicSection {
  double t_start = 0.0;
  double t_end = 0.0;
  DepthEnd deepest_end = DepthEnd::AtEnd;

  double deepest_time() const { return deepest_end == DepthEnd::AtEnd ? t_end : t_start; }
  double shallowest_time() const { return deepest_end == DepthEnd::AtEnd ? t_start : t_end; }
};

// A quartic derivative has at most four interior zeros.
using SectionList = StaticVector<MonotonicSection, 5>;

//! Splits [0, T] at the zeros of axis . velocity(t). Consecutive sections
//! share endpoints. A trajectory with zero velocity along the axis yields a
//! single section whose deepest end is AtEnd.
SectionList monotonic_sections(const Trajectory& traj, const Vec3& axis);

//! Times t in [t_lo, t_hi], t > 0, where the trajectory crosses the plane
//! through its initial position with unit normal n. everywhere_zero() on
//! the result means the trajectory lies in the plane.
RootSet plane_crossings(const Trajectory& traj, const Vec3& n, double t_lo, double t_hi);

enum class Feasibility { Feasible, Infeasible, Indeterminate };

const char* to_string(Feasibility f);

//! Mass-normalized thrust and body-rate limits.
struct DynamicLimits {
  double f_min = 2.0;      // m/s^2
  double f_max = 20.0;     // m/s^2
  double omega_max = 3.0;  // rad/s
  Vec3 gravity = Vec3(0.0, 0.0, -9.81);
};

//! Conservative input-feasibility test.
//!
//! The thrust f(t) = |acceleration(t) - gravity| must stay within
//! [f_min, f_max] and the body-rate bound |jerk(t)| / f(t) must stay below
//! omega_max. Each interval is bounded exactly per axis (closed-form
//! extrema of the cubic acceleration and quadratic jerk) and bisected up to
//! depth 8. Feasible is only returned when every leaf is proven inside the
//! limits; Infeasible only when a sampled point violates one.
Feasibility feasibility_check(const Trajectory& traj, const DynamicLimits& limits);

}  // namespace pyramidplan
