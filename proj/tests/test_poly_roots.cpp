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

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "pyramidplan/poly_roots.hpp"

namespace pyramidplan {
namespace {

std::vector<double> as_vector(const RootSet& r) { return {r.begin(), r.end()}; }

PolyCoeffs poly(double c0, double c1, double c2, double c3, double c4) {
  PolyCoeffs p;
  p.c = {c0, c1, c2, c3, c4};
  return p;
}

TEST(PolyRoots, QuarticWithSinglePositiveRoot) {
  const RootSet r = real_roots_in_interval(poly(-1, 0, 0, 0, 1), 0.0, 2.0);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], 1.0, 1e-12);
}

TEST(PolyRoots, NonzeroConstantHasNoRoots) {
  const RootSet r = real_roots_in_interval(poly(3, 0, 0, 0, 0), 0.0, 1.0);
  EXPECT_FALSE(r.everywhere_zero());
  EXPECT_TRUE(r.empty());
}

TEST(PolyRoots, ZeroPolynomialIsFlagged) {
  const RootSet r = real_roots_in_interval(poly(0, 1e-14, 0, 0, 0), 0.0, 1.0);
  EXPECT_TRUE(r.everywhere_zero());
  EXPECT_TRUE(r.empty());
}

TEST(PolyRoots, LowerDegrees) {
  EXPECT_EQ(as_vector(real_roots_in_interval(poly(-2, 4, 0, 0, 0), 0.0, 1.0)), std::vector<double>{0.5});
  const auto q = as_vector(real_roots_in_interval(poly(2, -3, 1, 0, 0), 0.0, 5.0));
  ASSERT_EQ(q.size(), 2u);
  EXPECT_NEAR(q[0], 1.0, 1e-12);
  EXPECT_NEAR(q[1], 2.0, 1e-12);
  // (t - 0.5)(t - 1)(t - 2)
  const auto c = as_vector(real_roots_in_interval(poly(-1, 3.5, -3.5, 1, 0), 0.0, 3.0));
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(c[0], 0.5, 1e-10);
  EXPECT_NEAR(c[1], 1.0, 1e-10);
  EXPECT_NEAR(c[2], 2.0, 1e-10);
}

TEST(PolyRoots, VanishingLeadingCoefficientIsDemoted) {
  // 1e-15 t^4 + t - 1: the quartic term is below the degeneracy threshold.
  const auto r = as_vector(real_roots_in_interval(poly(-1, 1, 0, 0, 1e-15), 0.0, 2.0));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], 1.0, 1e-12);
}

TEST(PolyRoots, DoubleRootReportedOnce) {
  // (t - 1)^2 (t + 2)(t - 2.5) = t^4 - 2.5 t^3 - 3 t^2 + 9.5 t - 5
  const auto r = as_vector(real_roots_in_interval(poly(-5, 9.5, -3, -2.5, 1), 0.0, 3.0));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], 1.0, 1e-6);
  EXPECT_NEAR(r[1], 2.5, 1e-10);
}

TEST(PolyRoots, BiquadraticAndInterval) {
  // (t^2 - 1)(t^2 - 4): roots +-1, +-2; only those in [-1.5, 3] survive.
  const auto r = as_vector(real_roots_in_interval(poly(4, 0, -5, 0, 1), -1.5, 3.0));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], -1.0, 1e-12);
  EXPECT_NEAR(r[1], 1.0, 1e-12);
  EXPECT_NEAR(r[2], 2.0, 1e-12);
}

TEST(PolyRoots, RootsAtIntervalEnds) {
  // t (t - 3) (t^2 + 1)
  const auto r = as_vector(real_roots_in_interval(poly(0, -3, 1, -3, 1), 0.0, 3.0));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], 0.0, 1e-12);
  EXPECT_NEAR(r[1], 3.0, 1e-12);
}

// Random quartics against the sign-change bisection oracle, plus the
// residual, range and no-missed-sign-change properties.
TEST(PolyRoots, RandomQuarticsMatchBisectionOracle) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coef(-10.0, 10.0);
  int agree = 0;
  const int n = 2000;
  double max_err = 0.0;
  for (int i = 0; i < n; ++i) {
    const PolyCoeffs p = poly(coef(rng), coef(rng), coef(rng), coef(rng), coef(rng));
    const RootSet r = real_roots_in_interval(p, 0.0, 3.0);
    const auto found = as_vector(r);
    const auto expected = testing::bisection_roots([&](double t) { return p(t); }, 0.0, 3.0);

    for (double t : found) {
      EXPECT_GE(t, 0.0);
      EXPECT_LE(t, 3.0);
      EXPECT_LE(std::abs(p(t)), kRootResidual * p.scale(t));
    }
    for (std::size_t k = 1; k < found.size(); ++k) EXPECT_LT(found[k - 1], found[k]);

    bool ok = found.size() >= expected.size();
    const double err = testing::worst_match(expected, found);
    if (err > 1e-6) ok = false;
    // Extra roots are only acceptable as (near-)double roots.
    for (double t : found) {
      if (testing::worst_match({t}, expected) > 1e-6 && std::abs(p(t)) > 1e-5 * p.scale(t)) ok = false;
    }
    if (ok) {
      ++agree;
      max_err = std::max(max_err, err);
    }
  }
  EXPECT_GE(agree, n - n / 1000);
  EXPECT_LE(max_err, 1e-6);
}

TEST(PolyRoots, NoSignChangeBetweenReportedRoots) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-10.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const PolyCoeffs p = poly(coef(rng), coef(rng), coef(rng), coef(rng), coef(rng));
    const auto found = as_vector(real_roots_in_interval(p, 0.0, 3.0));
    std::vector<double> cuts{0.0};
    cuts.insert(cuts.end(), found.begin(), found.end());
    cuts.push_back(3.0);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      // Stay 1e-6 away from the roots themselves.
      const double a = cuts[k] + 1e-6;
      const double b = cuts[k + 1] - 1e-6;
      if (!(b > a)) continue;
      const int s = testing::sign_of(p(0.5 * (a + b)));
      for (int j = 0; j <= 200; ++j) {
        const double t = a + (b - a) * j / 200.0;
        const double v = p(t);
        if (std::abs(v) <= 1e-9 * p.scale(t)) continue;
        EXPECT_EQ(testing::sign_of(v), s) << "missed sign change near t=" << t;
      }
    }
  }
}

}  // namespace
}  // namespace pyramidplan
