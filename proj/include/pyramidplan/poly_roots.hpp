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

#include <array>
#include <cstddef>

namespace pyramidplan {

//! Real polynomial of degree at most four; c[k] multiplies t^k.
struct PolyCoeffs {
  std::array<double, 5> c{};

  //! Relative threshold used to demote vanishing leading coefficients.
  static constexpr double kDegeneracyRel = 1e-12;
  //! Absolute floor below which the whole polynomial counts as zero.
  static constexpr double kZeroAbs = 1e-12;

  double max_abs() const;
  //! Largest k with |c[k]| above the degeneracy threshold, or -1 if the
  //! polynomial is everywhere zero.
  int degree() const;
  bool is_everywhere_zero() const { return degree() < 0; }

  double operator()(double t) const {
    return (((c[4] * t + c[3]) * t + c[2]) * t + c[1]) * t + c[0];
  }
  double derivative(double t) const {
    return ((4.0 * c[4] * t + 3.0 * c[3]) * t + 2.0 * c[2]) * t + c[1];
  }
  //! Magnitude of the terms summed when evaluating at t; the natural
  //! yardstick for floating-point residuals.
  double scale(double t) const;
};

//! Sorted, deduplicated real roots of a PolyCoeffs inside an interval.
//! At most four roots; an everywhere-zero polynomial carries no roots and
//! sets everywhere_zero() instead.
class RootSet {
 public:
  static RootSet everywhere_zero_result() {
    RootSet r;
    r.zero_ = true;
    return r;
  }

  bool everywhere_zero() const { return zero_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  double operator[](std::size_t i) const { return roots_[i]; }
  const double* begin() const { return roots_.data(); }
  const double* end() const { return roots_.data() + count_; }

  void push_back(double t) {
    if (count_ < roots_.size()) roots_[count_++] = t;
  }
  void clear() { count_ = 0; }

 private:
  std::array<double, 4> roots_{};
  std::size_t count_ = 0;
  bool zero_ = false;
};

//! Every real root of p in [t_lo, t_hi], ascending, each reported once.
//!
//! Degrees three and four use closed forms (Cardano / Ferrari through the
//! resolvent cubic); every candidate is Newton-polished on p itself and
//! kept only if |p(t)| <= kRootResidual * p.scale(t). Candidates from
//! complex pairs with a near-zero imaginary part survive that filter when
//! they are genuine (near-)double roots.
RootSet real_roots_in_interval(const PolyCoeffs& p, double t_lo, double t_hi);

inline constexpr double kRootResidual = 1e-9;

}  // namespace pyramidplan
