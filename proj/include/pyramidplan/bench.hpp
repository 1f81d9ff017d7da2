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
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pyramidplan/sim_loop.hpp"

namespace pyramidplan {

struct BenchCommon {
  std::uint64_t seed = 1;
  int trials = 100;
  int width = 160;
  int height = 120;
  int threads = 1;
  double vehicle_radius = 0.3;  // m
};

//! --threads if given, else BENCH_THREADS, else 1.
int resolve_threads(std::optional<int> flag);

//! Runs body(i) for i in [0, n) on `threads` workers. Results must be
//! written by index so the outcome does not depend on the thread count.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

// ---------------------------------------------------------------------------
// Conservativeness

struct ConservativenessConfig {
  BenchCommon common;
  int trajectories = 1000;  // per scene
  std::vector<std::size_t> caps{1, 4, 16, 64};
  bool include_uncapped = false;
  double oracle_dt = 0.005;
};

//! Labels of one scene under one pyramid cap.
struct ScenePyramidLabels {
  int in_collision = 0;
  int wrongly_in_collision = 0;  // labeled in collision, oracle says free
  int false_free = 0;            // labeled free, oracle says in collision
  std::size_t pyramids = 0;

  //! wrongly_in_collision / in_collision, NaN when nothing is in collision.
  double conservativeness() const;
};

struct ConservativenessTrial {
  int oracle_free = 0;
  std::vector<ScenePyramidLabels> per_cap;  // caps order, then uncapped
};

struct CapRow {
  std::optional<std::size_t> cap;  // nullopt: uncapped
  int trials = 0;
  int defined_scenes = 0;          // scenes with at least one in-collision label
  double mean_conservativeness = 0.0;
  double std_error = 0.0;
  double mean_false_free = 0.0;
  std::uint64_t false_free_total = 0;
  double mean_pyramids = 0.0;
};

struct ConservativenessResult {
  std::vector<ConservativenessTrial> trials;
  std::vector<CapRow> rows;
  std::uint64_t candidates_total = 0;
  std::uint64_t oracle_free_total = 0;
  std::uint64_t false_free_total() const;
};

ConservativenessResult conservativeness_sweep(const ConservativenessConfig& cfg);

// ---------------------------------------------------------------------------
// Timing

struct TimingConfig {
  BenchCommon common;
  int trajectories = 1000;
  double build_budget_s = 1.81e-3;
  int kd_samples = 20;
  //! Oracle-audit every k-th trajectory the pyramids call free; 0 disables.
  int audit_every = 1;
  double oracle_dt = 0.005;
};

struct TimingTrial {
  std::size_t pyramids = 0;
  double pyramid_build_s = 0.0;
  double kd_build_s = 0.0;
  std::size_t kd_points = 0;
  double pyramid_mean_us = 0.0;
  double pyramid_median_us = 0.0;
  double kd_mean_us = 0.0;
  double kd_median_us = 0.0;
  int pyramid_free = 0;
  int kd_free = 0;
  int audited = 0;
  int audit_violations = 0;
};

struct TimingResult {
  std::vector<TimingTrial> trials;
  double mean_pyramid_us() const;
  double mean_kd_us() const;
  double mean_pyramids() const;
  int audit_violations() const;
};

//! Single-threaded by design.
TimingResult timing_benchmark(const TimingConfig& cfg);

// ---------------------------------------------------------------------------
// Planner budget sweep

struct BudgetConfig {
  BenchCommon common{1, 20, 640, 480, 1, 0.3};
  std::vector<double> budgets_ms{0.0, 5.0, 10.0, 20.0, 30.0, 50.0};
};

struct BudgetRow {
  double budget_ms = 0.0;
  int trials = 0;
  double mean_candidates = 0.0;
  double mean_collision_free = 0.0;
  double mean_pyramids = 0.0;
  double success_fraction = 0.0;
  double mean_elapsed_ms = 0.0;
};

//! Every budget replays the same scenes, states and planner seeds.
//! Single-threaded so budgets are not shared with other work.
std::vector<BudgetRow> budget_sweep(const BudgetConfig& cfg);

// ---------------------------------------------------------------------------
// Closed-loop runs

struct SimBenchConfig {
  BenchCommon common{1, 10, 160, 120, 1, 0.3};
  std::optional<std::string> world_path;
  int clutter_per_leg = 3;
  //! Wall-clock budget in ms; unset means a fixed candidate count.
  std::optional<double> budget_ms;
  std::uint64_t budget_candidates = 300;
  int max_frames = 2400;
};

//! One SimLog per run; run k uses seed sub_seed(seed, k) for both the
//! planner and the clutter layout.
std::vector<SimLog> run_sim(const SimBenchConfig& cfg);

// ---------------------------------------------------------------------------
// CSV

//! A CSV table with a leading "# key=value; ..." metadata comment line.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> header;
  std::vector<std::string> timing_columns;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out) const;
};

std::string csv_number(double v);
std::uint64_t config_hash(const nlohmann::json& config);

CsvTable conservativeness_csv(const ConservativenessConfig& cfg, const ConservativenessResult& res);
CsvTable timing_csv(const TimingConfig& cfg, const TimingResult& res);
CsvTable budget_csv(const BudgetConfig& cfg, const std::vector<BudgetRow>& rows);
CsvTable sim_csv(const SimBenchConfig& cfg, const std::vector<SimLog>& logs);

nlohmann::json timing_summary_json(const TimingConfig& cfg, const TimingResult& res);

}  // namespace pyramidplan
