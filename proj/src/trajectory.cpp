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

#include "pyramidplan/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pyramidplan {

Trajectory::Trajectory(const Vec3& alpha, const Vec3& beta, const Vec3& gamma, const VehicleState& init,
                       double duration)
    : alpha_(alpha), beta_(beta), gamma_(gamma), init_(init), duration_(duration) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("trajectory duration must be positive and finite");
  }
  if (!alpha.allFinite() || !beta.allFinite() || !gamma.allFinite() || !init.is_finite()) {
    throw std::invalid_argument("trajectory coefficients must be finite");
  }
}

Trajectory Trajectory::from_boundary(const VehicleState& init, const VehicleState& final_state,
                                     double duration) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("trajectory duration must be positive and finite");
  }
  if (!init.is_finite() || !final_state.is_finite()) {
    throw std::invalid_argument("boundary states must be finite");
  }
  const double T = duration;
  const double T2 = T * T;
  const double T3 = T2 * T;
  const double T4 = T3 * T;
  const double T5 = T4 * T;

  // Residual boundary error left by the free (constant-acceleration) motion.
  const Vec3 dp = final_state.position - init.position - init.velocity * T - 0.5 * init.acceleration * T2;
  const Vec3 dv = final_state.velocity - init.velocity - init.acceleration * T;
  const Vec3 da = final_state.acceleration - init.acceleration;

  const Vec3 alpha = (720.0 * dp - 360.0 * T * dv + 60.0 * T2 * da) / T5;
  const Vec3 beta = (-360.0 * T * dp + 168.0 * T2 * dv - 24.0 * T3 * da) / T5;
  const Vec3 gamma = (60.0 * T2 * dp - 24.0 * T3 * dv + 3.0 * T4 * da) / T5;
  return Trajectory(alpha, beta, gamma, init, T);
}

Vec3 Trajectory::evaluate(double t, int order) const {
  if (!(t >= 0.0 && t <= duration_)) throw std::out_of_range("evaluation time outside [0, T]");
  switch (order) {
    case 0:
      return position(t);
    case 1:
      return velocity(t);
    case 2:
      return acceleration(t);
    case 3:
      return jerk(t);
    default:
      throw std::out_of_range("derivative order must be 0..3");
  }
}

VehicleState Trajectory::state_at(double t) const {
  VehicleState s;
  s.position = position(t);
  s.velocity = velocity(t);
  s.acceleration = acceleration(t);
  return s;
}

PolyCoeffs Trajectory::axis_velocity_poly(const Vec3& axis) const {
  PolyCoeffs p;
  p.c[0] = axis.dot(init_.velocity);
  p.c[1] = axis.dot(init_.acceleration);
  p.c[2] = axis.dot(gamma_) / 2.0;
  p.c[3] = axis.dot(beta_) / 6.0;
  p.c[4] = axis.dot(alpha_) / 24.0;
  return p;
}

PolyCoeffs Trajectory::plane_distance_quotient(const Vec3& n) const {
  PolyCoeffs p;
  p.c[0] = n.dot(init_.velocity);
  p.c[1] = n.dot(init_.acceleration) / 2.0;
  p.c[2] = n.dot(gamma_) / 6.0;
  p.c[3] = n.dot(beta_) / 24.0;
  p.c[4] = n.dot(alpha_) / 120.0;
  return p;
}

Trajectory Trajectory::transformed(const Mat3& rotation, const Vec3& offset) const {
  VehicleState init;
  init.position = rotation * init_.position + offset;
  init.velocity = rotation * init_.velocity;
  init.acceleration = rotation * init_.acceleration;
  return Trajectory(rotation * alpha_, rotation * beta_, rotation * gamma_, init, duration_);
}

SectionList monotonic_sections(const Trajectory& traj, const Vec3& axis) {
  const double T = traj.duration();
  SectionList out;
  const RootSet roots = real_roots_in_interval(traj.axis_velocity_poly(axis), 0.0, T);
  if (roots.everywhere_zero()) {
    out.push_back({0.0, T, DepthEnd::AtEnd});
    return out;
  }

  // Boundary set {0, T} plus interior zeros, adjacent duplicates merged.
  std::array<double, 6> times{};
  std::size_t n = 0;
  times[n++] = 0.0;
  const double merge_tol = 1e-9 * std::max(1.0, T);
  for (double t : roots) {
    if (t - times[n - 1] > merge_tol && T - t > merge_tol) times[n++] = t;
  }
  times[n++] = T;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = times[i];
    const double b = times[i + 1];
    const double za = axis.dot(traj.position(a));
    const double zb = axis.dot(traj.position(b));
    out.push_back({a, b, zb >= za ? DepthEnd::AtEnd : DepthEnd::AtStart});
  }
  return out;
}

RootSet plane_crossings(const Trajectory& traj, const Vec3& n, double t_lo, double t_hi) {
  const RootSet roots = real_roots_in_interval(traj.plane_distance_quotient(n), t_lo, t_hi);
  if (roots.everywhere_zero()) return roots;
  RootSet out;
  for (double t : roots) {
    if (t > 0.0) out.push_back(t);
  }
  return out;
}

const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::Feasible:
      return "feasible";
    case Feasibility::Infeasible:
      return "infeasible";
    case Feasibility::Indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

namespace {

struct Range {
  double lo;
  double hi;
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

// Exact per-axis ranges of the acceleration cubic and jerk quadratic.
struct AxisBounds {
  Range accel;
  Range jerk;
};

AxisBounds axis_bounds(double alpha, double beta, double gamma, double a0, double t0, double t1) {
  auto accel = [&](double t) { return ((alpha / 6.0 * t + beta / 2.0) * t + gamma) * t + a0; };
  auto jerk = [&](double t) { return (alpha / 2.0 * t + beta) * t + gamma; };

  AxisBounds b{{accel(t0), accel(t0)}, {jerk(t0), jerk(t0)}};
  b.accel.include(accel(t1));
  b.jerk.include(jerk(t1));

  // Jerk vertex, and the zeros of jerk which are the acceleration extrema.
  if (alpha != 0.0) {
    const double tv = -beta / alpha;
    if (tv > t0 && tv < t1) b.jerk.include(jerk(tv));
  }
  PolyCoeffs jp;
  jp.c[0] = gamma;
  jp.c[1] = beta;
  jp.c[2] = alpha / 2.0;
  const RootSet zeros = real_roots_in_interval(jp, t0, t1);
  for (double t : zeros) b.accel.include(accel(t));
  return b;
}

double max_abs_norm(const Range* r) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double m = std::max(std::abs(r[k].lo), std::abs(r[k].hi));
    s += m * m;
  }
  return std::sqrt(s);
}

double min_abs_norm(const Range* r) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    double m = 0.0;
    if (r[k].lo > 0.0) {
      m = r[k].lo;
    } else if (r[k].hi < 0.0) {
      m = -r[k].hi;
    }
    s += m * m;
  }
  return std::sqrt(s);
}

enum class IntervalVerdict { Inside, Violated, Unknown };

}  // namespace

Feasibility feasibility_check(const Trajectory& traj, const DynamicLimits& limits) {
  constexpr int kMaxDepth = 8;
  const Vec3& al = traj.alpha();
  const Vec3& be = traj.beta();
  const Vec3& ga = traj.gamma();
  const Vec3& a0 = traj.initial_state().acceleration;

  auto point_violates = [&](double t) {
    const double f = (traj.acceleration(t) - limits.gravity).norm();
    if (f < limits.f_min || f > limits.f_max) return true;
    return traj.jerk(t).norm() > limits.omega_max * f;
  };

  auto classify = [&](double t0, double t1) {
    Range thrust[3];
    Range jerk[3];
    for (int k = 0; k < 3; ++k) {
      const AxisBounds b = axis_bounds(al[k], be[k], ga[k], a0[k], t0, t1);
      thrust[k] = {b.accel.lo - limits.gravity[k], b.accel.hi - limits.gravity[k]};
      jerk[k] = b.jerk;
    }
    const double f_lo = min_abs_norm(thrust);
    const double f_hi = max_abs_norm(thrust);
    const double j_hi = max_abs_norm(jerk);
    if (f_lo >= limits.f_min && f_hi <= limits.f_max && j_hi <= limits.omega_max * f_lo) {
      return IntervalVerdict::Inside;
    }
    if (point_violates(0.5 * (t0 + t1))) return IntervalVerdict::Violated;
    return IntervalVerdict::Unknown;
  };

  const double T = traj.duration();
  if (point_violates(0.0) || point_violates(T)) return Feasibility::Infeasible;

  struct Item {
    double t0;
    double t1;
    int depth;
  };
  StaticVector<Item, kMaxDepth + 2> stack;
  stack.push_back({0.0, T, 0});
  bool undecided = false;
  while (!stack.empty()) {
    const Item it = stack.pop_back();
    switch (classify(it.t0, it.t1)) {
      case IntervalVerdict::Inside:
        break;
      case IntervalVerdict::Violated:
        return Feasibility::Infeasible;
      case IntervalVerdict::Unknown:
        if (it.depth >= kMaxDepth) {
          undecided = true;
        } else {
          const double mid = 0.5 * (it.t0 + it.t1);
          stack.push_back({mid, it.t1, it.depth + 1});
          stack.push_back({it.t0, mid, it.depth + 1});
        }
        break;
    }
  }
  return undecided ? Feasibility::Indeterminate : Feasibility::Feasible;
}

}  // namespace pyramidplan
