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

#include "pyramidplan/poly_roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pyramidplan {

double PolyCoeffs::max_abs() const {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

int PolyCoeffs::degree() const {
  const double m = max_abs();
  if (m <= kZeroAbs) return -1;
  const double eps = kDegeneracyRel * m;
  for (int k = 4; k >= 0; --k) {
    if (std::abs(c[k]) > eps) return k;
  }
  return -1;
}

double PolyCoeffs::scale(double t) const {
  const double at = std::abs(t);
  double s = 0.0;
  double tk = 1.0;
  for (double v : c) {
    s += std::abs(v) * tk;
    tk *= at;
  }
  return s;
}

namespace {

struct Candidate {
  double re;
  double im;
};

// Up to four complex candidates; only near-real ones matter downstream.
struct CandidateList {
  std::array<Candidate, 4> items{};
  int n = 0;
  void add(double re, double im = 0.0) {
    if (n < 4) items[n++] = {re, im};
  }
};

// Roots of a*x^2 + b*x + c with a != 0.
void quadratic(double a, double b, double c, CandidateList& out) {
  const double disc = b * b - 4.0 * a * c;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    if (q == 0.0) {
      out.add(0.0);
      out.add(0.0);
      return;
    }
    out.add(q / a);
    out.add(c / q);
  } else {
    const double re = -b / (2.0 * a);
    const double im = std::sqrt(-disc) / (2.0 * std::abs(a));
    out.add(re, im);
    out.add(re, -im);
  }
}

// Roots of the monic cubic x^3 + a x^2 + b x + c.
void monic_cubic(double a, double b, double c, CandidateList& out) {
  const double shift = a / 3.0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double half_q = 0.5 * q;
  const double third_p = p / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;

  if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-half_q - std::copysign(sq, half_q));
    const double v = (u != 0.0) ? -third_p / u : 0.0;
    out.add(u + v - shift);
    const double re = -0.5 * (u + v) - shift;
    const double im = 0.5 * std::sqrt(3.0) * (u - v);
    out.add(re, im);
    out.add(re, -im);
    return;
  }
  if (p == 0.0) {
    out.add(-shift);
    out.add(-shift);
    out.add(-shift);
    return;
  }
  const double m = 2.0 * std::sqrt(-third_p);
  double arg = (3.0 * q / (2.0 * p)) * std::sqrt(-3.0 / p);
  arg = std::clamp(arg, -1.0, 1.0);
  const double theta = std::acos(arg) / 3.0;
  constexpr double kTwoThirdsPi = 2.0 * std::numbers::pi / 3.0;
  for (int k = 0; k < 3; ++k) {
    out.add(m * std::cos(theta - kTwoThirdsPi * k) - shift);
  }
}

double largest_real_cubic_root(double a, double b, double c) {
  CandidateList cands;
  monic_cubic(a, b, c, cands);
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < cands.n; ++i) {
    if (std::abs(cands.items[i].im) <= 1e-12 * std::max(1.0, std::abs(cands.items[i].re))) {
      best = std::max(best, cands.items[i].re);
    }
  }
  if (!std::isfinite(best)) best = cands.items[0].re;
  // Two Newton steps tighten the resolvent root before it is square-rooted.
  for (int it = 0; it < 2; ++it) {
    const double f = ((best + a) * best + b) * best + c;
    const double df = (3.0 * best + 2.0 * a) * best + b;
    if (df == 0.0) break;
    best -= f / df;
  }
  return best;
}

// Roots of the monic quartic x^4 + a x^3 + b x^2 + c x + d.
void monic_quartic(double a, double b, double c, double d, CandidateList& out) {
  const double shift = 0.25 * a;
  const double a2 = a * a;
  const double p = b - 3.0 * a2 / 8.0;
  const double q = c - 0.5 * a * b + a2 * a / 8.0;
  const double r = d - 0.25 * a * c + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;

  auto biquadratic = [&]() {
    CandidateList z;
    quadratic(1.0, p, r, z);
    for (int i = 0; i < z.n; ++i) {
      // y^2 = z, with z possibly complex.
      const double zr = z.items[i].re;
      const double zi = z.items[i].im;
      const double mod = std::hypot(zr, zi);
      const double yr = std::sqrt(std::max(0.0, 0.5 * (mod + zr)));
      double yi = std::sqrt(std::max(0.0, 0.5 * (mod - zr)));
      if (zi < 0.0) yi = -yi;
      out.add(yr - shift, yi);
      out.add(-yr - shift, -yi);
    }
  };

  const double coeff_scale = std::max({1.0, std::abs(p), std::sqrt(std::abs(r))});
  if (std::abs(q) <= 1e-14 * coeff_scale * coeff_scale * coeff_scale) {
    biquadratic();
    return;
  }

  const double m = largest_real_cubic_root(p, 0.25 * p * p - r, -0.125 * q * q);
  if (!(m > 0.0)) {
    biquadratic();
    return;
  }
  const double s = std::sqrt(2.0 * m);
  const double k = q / (2.0 * s);
  CandidateList y;
  quadratic(1.0, s, 0.5 * p + m - k, y);
  quadratic(1.0, -s, 0.5 * p + m + k, y);
  for (int i = 0; i < y.n; ++i) out.add(y.items[i].re - shift, y.items[i].im);
}

double polish(const PolyCoeffs& p, double t) {
  double best = t;
  double best_res = std::abs(p(t));
  for (int it = 0; it < 3 && best_res > 0.0; ++it) {
    const double d = p.derivative(best);
    if (d == 0.0 || !std::isfinite(d)) break;
    const double next = best - p(best) / d;
    const double res = std::abs(p(next));
    if (!(res < best_res)) break;
    best = next;
    best_res = res;
  }
  return best;
}

}  // namespace

RootSet real_roots_in_interval(const PolyCoeffs& p, double t_lo, double t_hi) {
  const int deg = p.degree();
  if (deg < 0) return RootSet::everywhere_zero_result();

  RootSet out;
  if (deg == 0) return out;

  CandidateList cands;
  const auto& c = p.c;
  switch (deg) {
    case 1:
      cands.add(-c[0] / c[1]);
      break;
    case 2:
      quadratic(c[2], c[1], c[0], cands);
      break;
    case 3:
      monic_cubic(c[2] / c[3], c[1] / c[3], c[0] / c[3], cands);
      break;
    default:
      monic_quartic(c[3] / c[4], c[2] / c[4], c[1] / c[4], c[0] / c[4], cands);
      break;
  }

  const double span_tol = 1e-12 * std::max({1.0, std::abs(t_lo), std::abs(t_hi)});
  std::array<double, 4> found{};
  int n = 0;
  for (int i = 0; i < cands.n; ++i) {
    const auto& cand = cands.items[i];
    if (!std::isfinite(cand.re)) continue;
    if (std::abs(cand.im) > 1e-4 * std::max(1.0, std::abs(cand.re))) continue;
    const double t = polish(p, cand.re);
    if (t < t_lo - span_tol || t > t_hi + span_tol) continue;
    if (std::abs(p(t)) > kRootResidual * p.scale(t)) continue;
    found[n++] = std::clamp(t, t_lo, t_hi);
  }
  std::sort(found.begin(), found.begin() + n);
  for (int i = 0; i < n; ++i) {
    if (out.size() > 0) {
      const double prev = out[out.size() - 1];
      if (found[i] - prev <= 1e-7 * std::max(1.0, std::abs(prev))) continue;
    }
    out.push_back(found[i]);
  }
  return out;
}

}  // namespace pyramidplan
