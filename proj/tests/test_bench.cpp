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

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <vector>

#include "pyramidplan/bench.hpp"

namespace pyramidplan {
namespace {

TEST(Csv, NumbersRoundTrip) {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 1e-300, 6.02e23}) {
    EXPECT_EQ(std::stod(csv_number(v)), v);
  }
  EXPECT_EQ(csv_number(std::numeric_limits<double>::quiet_NaN()), "NaN");
  EXPECT_EQ(csv_number(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Csv, MetadataLineAndQuoting) {
  CsvTable t;
  t.metadata = {{"command", "x"}, {"seed", "3"}};
  t.header = {"a", "b"};
  t.rows = {{"1", "has,comma"}, {"say \"hi\"", "2"}};
  std::ostringstream os;
  t.write(os);
  EXPECT_EQ(os.str(), "# command=x; seed=3\na,b\r\n1,\"has,comma\"\r\n\"say \"\"hi\"\"\",2\r\n");
}

TEST(Csv, ConfigHashIsStableAndSensitive) {
  const nlohmann::json a = {{"seed", 1}, {"trials", 5}};
  const nlohmann::json b = {{"trials", 5}, {"seed", 1}};
  const nlohmann::json c = {{"seed", 2}, {"trials", 5}};
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_NE(config_hash(a), config_hash(c));
  // 64-bit FNV-1a of the text "{}".
  EXPECT_EQ(config_hash(nlohmann::json::object()), 0x08f44b07b5901a25ULL);
}

TEST(Labels, ConservativenessUndefinedWithoutCollisions) {
  ScenePyramidLabels l;
  EXPECT_TRUE(std::isnan(l.conservativeness()));
  l.in_collision = 4;
  l.wrongly_in_collision = 1;
  EXPECT_DOUBLE_EQ(l.conservativeness(), 0.25);
}

TEST(Threads, ResolveAndParallelFor) {
  EXPECT_EQ(resolve_threads(3), 3);
  EXPECT_EQ(resolve_threads(0), 1);
  for (int threads : {1, 2, 7}) {
    std::vector<int> hits(100, 0);
    parallel_for(100, threads, [&](int i) { hits[i] += 1; });
    for (int h : hits) EXPECT_EQ(h, 1);
  }
}

TEST(Conservativeness, SmallSweepIsSafeAndThreadIndependent) {
  ConservativenessConfig cfg;
  cfg.common.trials = 6;
  cfg.trajectories = 50;
  cfg.include_uncapped = true;
  const ConservativenessResult one = conservativeness_sweep(cfg);
  EXPECT_EQ(one.false_free_total(), 0u);
  ASSERT_EQ(one.rows.size(), 5u);
  EXPECT_FALSE(one.rows.back().cap.has_value());
  EXPECT_EQ(one.candidates_total, 300u);
  cfg.common.threads = 3;
  const ConservativenessResult three = conservativeness_sweep(cfg);
  std::ostringstream a;
  std::ostringstream b;
  conservativeness_csv(cfg, one).write(a);
  conservativeness_csv(cfg, three).write(b);
  // The thread count is not part of the output.
  EXPECT_EQ(a.str(), b.str());
  for (const CapRow& r : one.rows) {
    EXPECT_GE(r.mean_conservativeness, 0.0);
    EXPECT_LE(r.mean_conservativeness, 1.0);
  }
}

TEST(Conservativeness, PyramidCapIsHonored) {
  ConservativenessConfig cfg;
  cfg.common.trials = 4;
  cfg.trajectories = 40;
  cfg.caps = {1, 2};
  const ConservativenessResult res = conservativeness_sweep(cfg);
  for (const ConservativenessTrial& t : res.trials) {
    EXPECT_LE(t.per_cap[0].pyramids, 1u);
    EXPECT_LE(t.per_cap[1].pyramids, 2u);
  }
}

TEST(Timing, SmallRunHasNoAuditViolations) {
  TimingConfig cfg;
  cfg.common.trials = 3;
  cfg.trajectories = 100;
  const TimingResult res = timing_benchmark(cfg);
  ASSERT_EQ(res.trials.size(), 3u);
  EXPECT_EQ(res.audit_violations(), 0);
  for (const TimingTrial& t : res.trials) {
    EXPECT_EQ(t.audited, t.pyramid_free);
    EXPECT_GT(t.kd_points, 0u);
    EXPECT_GT(t.pyramid_mean_us, 0.0);
  }
  const nlohmann::json s = timing_summary_json(cfg, res);
  EXPECT_TRUE(s.contains("pyramid_mean_us"));
}

TEST(Budget, ZeroBudgetEvaluatesNothing) {
  BudgetConfig cfg;
  cfg.common.trials = 2;
  cfg.common.width = 160;
  cfg.common.height = 120;
  cfg.budgets_ms = {0.0, 2.0};
  const std::vector<BudgetRow> rows = budget_sweep(cfg);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].mean_candidates, 0.0);
  EXPECT_EQ(rows[0].success_fraction, 0.0);
  EXPECT_GT(rows[1].mean_candidates, 0.0);
}

TEST(Sim, RunsAreSeededPerIndex) {
  SimBenchConfig cfg;
  cfg.common.trials = 2;
  cfg.max_frames = 30;
  const std::vector<SimLog> logs = run_sim(cfg);
  ASSERT_EQ(logs.size(), 2u);
  for (const SimLog& l : logs) {
    EXPECT_EQ(l.frames.size(), 30u);
    EXPECT_EQ(l.summary.safety_violations, 0);
  }
  std::ostringstream os;
  sim_csv(cfg, logs).write(os);
  EXPECT_EQ(os.str().rfind("# command=sim;", 0), 0u);
}

}  // namespace
}  // namespace pyramidplan
