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

#include "pyramidplan/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "pyramidplan/clearance_oracle.hpp"
#include "pyramidplan/kdtree.hpp"
#include "pyramidplan/seeding.hpp"

namespace pyramidplan {

using Clock = std::chrono::steady_clock;

int resolve_threads(std::optional<int> flag) {
  if (flag) return std::max(1, *flag);
  if (const char* env = std::getenv("BENCH_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  threads = std::clamp(threads, 1, std::max(1, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int k = 0; k < threads; ++k) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

namespace {

void check_common(const BenchCommon& c) {
  if (c.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (c.width < 2 || c.height < 2) throw std::invalid_argument("image must be at least 2x2");
  if (!(c.vehicle_radius > 0.0)) throw std::invalid_argument("vehicle radius must be positive");
}

PlannerConfig bench_planner_config(const BenchCommon& c) {
  PlannerConfig pc;
  pc.collision.vehicle_radius = c.vehicle_radius;
  return pc;
}

// Scene, image and initial state of one Monte Carlo trial, drawn from the
// trial's own stream; the stream is left positioned for candidate draws.
struct TrialSetup {
  Rng rng;
  DepthImage image;
  VehicleState state;
};

TrialSetup make_trial(const BenchCommon& c, int index) {
  Rng rng(sub_seed(c.seed, static_cast<std::uint64_t>(index)));
  const CameraModel cam = CameraModel::with_resolution(c.width, c.height);
  const Scene scene = random_benchmark_scene(rng);
  DepthImage image = render(scene, cam);
  const VehicleState state = random_initial_state(rng);
  return {std::move(rng), std::move(image), state};
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + mid));
  return m;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

// ---------------------------------------------------------------------------

double ScenePyramidLabels::conservativeness() const {
  if (in_collision == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(wrongly_in_collision) / in_collision;
}

std::uint64_t ConservativenessResult::false_free_total() const {
  std::uint64_t n = 0;
  for (const CapRow& r : rows) n += r.false_free_total;
  return n;
}

ConservativenessResult conservativeness_sweep(const ConservativenessConfig& cfg) {
  check_common(cfg.common);
  if (cfg.caps.empty() && !cfg.include_uncapped) throw std::invalid_argument("pyramid caps list is empty");
  if (cfg.trajectories < 1) throw std::invalid_argument("trajectories per scene must be at least 1");

  std::vector<std::optional<std::size_t>> caps(cfg.caps.begin(), cfg.caps.end());
  if (cfg.include_uncapped) caps.push_back(std::nullopt);

  const PlannerConfig pc = bench_planner_config(cfg.common);
  const double r = cfg.common.vehicle_radius;

  ConservativenessResult res;
  res.trials.resize(cfg.common.trials);
  parallel_for(cfg.common.trials, cfg.common.threads, [&](int i) {
    TrialSetup setup = make_trial(cfg.common, i);
    std::vector<Trajectory> cands;
    cands.reserve(cfg.trajectories);
    for (int k = 0; k < cfg.trajectories; ++k) cands.push_back(sample_candidate(setup.rng, setup.state, setup.image, pc));

    const ClearanceOracle oracle(setup.image, r);
    std::vector<char> truth(cands.size());
    ConservativenessTrial& trial = res.trials[i];
    for (std::size_t k = 0; k < cands.size(); ++k) {
      truth[k] = oracle.trajectory_free(cands[k], r, cfg.oracle_dt) ? 1 : 0;
      trial.oracle_free += truth[k];
    }

    for (const auto& cap : caps) {
      CollisionParams params = pc.collision;
      params.max_pyramids = cap;
      PyramidStore store;
      ScenePyramidLabels labels;
      for (std::size_t k = 0; k < cands.size(); ++k) {
        const bool free = is_collision_free(cands[k], store, setup.image, params);
        if (!free) {
          ++labels.in_collision;
          labels.wrongly_in_collision += truth[k];
        } else if (!truth[k]) {
          ++labels.false_free;
        }
      }
      labels.pyramids = store.size();
      trial.per_cap.push_back(labels);
    }
  });

  for (std::size_t c = 0; c < caps.size(); ++c) {
    CapRow row;
    row.cap = caps[c];
    row.trials = cfg.common.trials;
    double sum = 0.0;
    double sum_sq = 0.0;
    double pyr = 0.0;
    for (const ConservativenessTrial& t : res.trials) {
      const ScenePyramidLabels& lab = t.per_cap[c];
      row.false_free_total += static_cast<std::uint64_t>(lab.false_free);
      pyr += static_cast<double>(lab.pyramids);
      const double v = lab.conservativeness();
      if (std::isnan(v)) continue;
      ++row.defined_scenes;
      sum += v;
      sum_sq += v * v;
    }
    const double n = row.defined_scenes;
    if (n > 0) {
      row.mean_conservativeness = sum / n;
      const double var = n > 1 ? std::max(0.0, (sum_sq - n * row.mean_conservativeness * row.mean_conservativeness) / (n - 1)) : 0.0;
      row.std_error = std::sqrt(var / n);
    } else {
      row.mean_conservativeness = std::numeric_limits<double>::quiet_NaN();
      row.std_error = std::numeric_limits<double>::quiet_NaN();
    }
    row.mean_false_free = static_cast<double>(row.false_free_total) / row.trials;
    row.mean_pyramids = pyr / row.trials;
    res.rows.push_back(row);
  }
  for (const ConservativenessTrial& t : res.trials) res.oracle_free_total += static_cast<std::uint64_t>(t.oracle_free);
  res.candidates_total = static_cast<std::uint64_t>(cfg.common.trials) * cfg.trajectories;
  return res;
}

// ---------------------------------------------------------------------------

double TimingResult::mean_pyramid_us() const {
  double s = 0.0;
  for (const auto& t : trials) s += t.pyramid_mean_us;
  return trials.empty() ? 0.0 : s / trials.size();
}

double TimingResult::mean_kd_us() const {
  double s = 0.0;
  for (const auto& t : trials) s += t.kd_mean_us;
  return trials.empty() ? 0.0 : s / trials.size();
}

double TimingResult::mean_pyramids() const {
  double s = 0.0;
  for (const auto& t : trials) s += static_cast<double>(t.pyramids);
  return trials.empty() ? 0.0 : s / trials.size();
}

int TimingResult::audit_violations() const {
  int n = 0;
  for (const auto& t : trials) n += t.audit_violations;
  return n;
}

TimingResult timing_benchmark(const TimingConfig& cfg) {
  check_common(cfg.common);
  if (cfg.trajectories < 1) throw std::invalid_argument("trajectories per scene must be at least 1");
  if (cfg.kd_samples < 2) throw std::invalid_argument("kd sample count must be at least 2");

  const PlannerConfig pc = bench_planner_config(cfg.common);
  const double r = cfg.common.vehicle_radius;
  TimingResult res;
  res.trials.resize(cfg.common.trials);

  std::vector<double> pyr_us(cfg.trajectories);
  std::vector<double> kd_us(cfg.trajectories);
  std::vector<char> pyr_free(cfg.trajectories);
  for (int i = 0; i < cfg.common.trials; ++i) {
    TrialSetup setup = make_trial(cfg.common, i);
    std::vector<Trajectory> cands;
    cands.reserve(cfg.trajectories);
    for (int k = 0; k < cfg.trajectories; ++k) cands.push_back(sample_candidate(setup.rng, setup.state, setup.image, pc));
    TimingTrial& tr = res.trials[i];

    // Build phase: pyramids seeded at candidate endpoints until the budget
    // is spent.
    PyramidStore store;
    auto t0 = Clock::now();
    for (const Trajectory& c : cands) {
      if (seconds_since(t0) >= cfg.build_budget_s) break;
      const Vec3 end = c.position(c.duration());
      if (store.find_containing(end)) continue;
      const InflateResult ir = inflate_pyramid(end, setup.image, r, pc.collision.max_pyramid_depth);
      if (const Pyramid* p = std::get_if<Pyramid>(&ir)) store.push(*p);
    }
    tr.pyramid_build_s = seconds_since(t0);
    tr.pyramids = store.size();

    t0 = Clock::now();
    const KdTree tree = kd_build(setup.image, r);
    tr.kd_build_s = seconds_since(t0);
    tr.kd_points = tree.size();

    // Check phase: the store is frozen.
    CollisionParams frozen = pc.collision;
    frozen.max_pyramids = store.size();
    for (int k = 0; k < cfg.trajectories; ++k) {
      const auto a = Clock::now();
      const bool free = is_collision_free(cands[k], store, setup.image, frozen);
      const auto b = Clock::now();
      pyr_us[k] = std::chrono::duration<double, std::micro>(b - a).count();
      pyr_free[k] = free ? 1 : 0;
      tr.pyramid_free += free ? 1 : 0;
    }
    for (int k = 0; k < cfg.trajectories; ++k) {
      const auto a = Clock::now();
      const bool free = kd_check(cands[k], tree, r, cfg.kd_samples);
      const auto b = Clock::now();
      kd_us[k] = std::chrono::duration<double, std::micro>(b - a).count();
      tr.kd_free += free ? 1 : 0;
    }
    tr.pyramid_mean_us = mean(pyr_us);
    tr.pyramid_median_us = median(pyr_us);
    tr.kd_mean_us = mean(kd_us);
    tr.kd_median_us = median(kd_us);

    if (cfg.audit_every > 0) {
      const ClearanceOracle oracle(setup.image, r);
      int seen = 0;
      for (int k = 0; k < cfg.trajectories; ++k) {
        if (!pyr_free[k]) continue;
        if (seen++ % cfg.audit_every != 0) continue;
        ++tr.audited;
        if (!oracle.trajectory_free(cands[k], r, cfg.oracle_dt)) ++tr.audit_violations;
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------

std::vector<BudgetRow> budget_sweep(const BudgetConfig& cfg) {
  check_common(cfg.common);
  if (cfg.budgets_ms.empty()) throw std::invalid_argument("budget list is empty");
  std::vector<BudgetRow> rows(cfg.budgets_ms.size());
  for (std::size_t b = 0; b < rows.size(); ++b) {
    rows[b].budget_ms = cfg.budgets_ms[b];
    rows[b].trials = cfg.common.trials;
  }
  PlannerConfig pc = bench_planner_config(cfg.common);
  for (int i = 0; i < cfg.common.trials; ++i) {
    const TrialSetup setup = make_trial(cfg.common, i);
    pc.seed = sub_seed(cfg.common.seed ^ 0x5bd1e995ULL, static_cast<std::uint64_t>(i));
    for (std::size_t b = 0; b < rows.size(); ++b) {
      pc.budget = Budget::wall_clock(cfg.budgets_ms[b] * 1e-3);
      const PlannerReport rep = find_lowest_cost_trajectory(setup.state, setup.image, pc);
      rows[b].mean_candidates += static_cast<double>(rep.candidates);
      rows[b].mean_collision_free += static_cast<double>(rep.collision_free);
      rows[b].mean_pyramids += static_cast<double>(rep.pyramids);
      rows[b].success_fraction += rep.best ? 1.0 : 0.0;
      rows[b].mean_elapsed_ms += rep.elapsed_s * 1e3;
    }
  }
  for (BudgetRow& r : rows) {
    const double n = r.trials;
    r.mean_candidates /= n;
    r.mean_collision_free /= n;
    r.mean_pyramids /= n;
    r.success_fraction /= n;
    r.mean_elapsed_ms /= n;
  }
  return rows;
}

// ---------------------------------------------------------------------------

std::vector<SimLog> run_sim(const SimBenchConfig& cfg) {
  check_common(cfg.common);
  std::vector<SimLog> logs(cfg.common.trials);
  parallel_for(cfg.common.trials, cfg.common.threads, [&](int k) {
    const std::uint64_t seed = sub_seed(cfg.common.seed, static_cast<std::uint64_t>(k));
    SimWorld world;
    if (cfg.world_path) {
      world = load_world(*cfg.world_path);
    } else {
      TunnelParams tp;
      tp.clutter_per_leg = cfg.clutter_per_leg;
      tp.clutter_seed = seed;
      world = make_u_tunnel(tp);
    }
    world.camera = CameraModel::with_resolution(cfg.common.width, cfg.common.height);
    SimConfig sc;
    sc.vehicle_radius = cfg.common.vehicle_radius;
    sc.seed = seed;
    sc.budget = cfg.budget_ms ? Budget::wall_clock(*cfg.budget_ms * 1e-3) : Budget::candidate_count(cfg.budget_candidates);
    logs[k] = run(world, sc, cfg.max_frames);
  });
  return logs;
}

// ---------------------------------------------------------------------------

std::string csv_number(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t config_hash(const nlohmann::json& config) { return fnv1a(config.dump()); }

void CsvTable::write(std::ostream& out) const {
  out << '#';
  for (std::size_t i = 0; i < metadata.size(); ++i) {
    out << (i ? "; " : " ") << metadata[i].first << '=' << metadata[i].second;
  }
  out << '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string& c = cells[i];
      if (i) out << ',';
      if (c.find_first_of(",\"\n") != std::string::npos) {
        out << '"';
        for (char ch : c) {
          if (ch == '"') out << '"';
          out << ch;
        }
        out << '"';
      } else {
        out << c;
      }
    }
    out << "\r\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

namespace {

nlohmann::json common_json(const BenchCommon& c) {
  return {{"seed", c.seed}, {"trials", c.trials}, {"width", c.width}, {"height", c.height}, {"radius", c.vehicle_radius}};
}

std::string hex(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string join(const std::vector<std::string>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i];
  }
  return s;
}

CsvTable make_table(const std::string& command, const BenchCommon& c, const nlohmann::json& config,
                    std::vector<std::string> header, std::vector<std::string> timing) {
  CsvTable t;
  t.metadata = {{"command", command},
                {"seed", std::to_string(c.seed)},
                {"config_hash", hex(config_hash(config))},
                {"image", std::to_string(c.width) + "x" + std::to_string(c.height)},
                {"timing_columns", timing.empty() ? std::string("none") : join(timing, '|')}};
  t.header = std::move(header);
  t.timing_columns = std::move(timing);
  return t;
}

std::string u64(std::uint64_t v) { return std::to_string(v); }

}  // namespace

CsvTable conservativeness_csv(const ConservativenessConfig& cfg, const ConservativenessResult& res) {
  nlohmann::json conf = common_json(cfg.common);
  conf["trajectories"] = cfg.trajectories;
  conf["caps"] = cfg.caps;
  conf["uncapped"] = cfg.include_uncapped;
  conf["oracle_dt"] = cfg.oracle_dt;
  CsvTable t = make_table("conservativeness", cfg.common, conf,
                          {"cap", "trials", "defined_scenes", "mean_conservativeness", "std_error",
                           "mean_false_free", "false_free_total", "mean_pyramids"},
                          {});
  for (const CapRow& r : res.rows) {
    t.rows.push_back({r.cap ? u64(*r.cap) : std::string("none"), std::to_string(r.trials),
                      std::to_string(r.defined_scenes), csv_number(r.mean_conservativeness), csv_number(r.std_error),
                      csv_number(r.mean_false_free), u64(r.false_free_total), csv_number(r.mean_pyramids)});
  }
  return t;
}

CsvTable timing_csv(const TimingConfig& cfg, const TimingResult& res) {
  nlohmann::json conf = common_json(cfg.common);
  conf["trajectories"] = cfg.trajectories;
  conf["build_budget_s"] = cfg.build_budget_s;
  conf["kd_samples"] = cfg.kd_samples;
  conf["audit_every"] = cfg.audit_every;
  CsvTable t = make_table("timing", cfg.common, conf,
                          {"trial", "pyramids", "pyramid_build_us", "kd_build_us", "kd_points", "pyramid_mean_us",
                           "pyramid_median_us", "kd_mean_us", "kd_median_us", "pyramid_free", "kd_free", "audited",
                           "audit_violations"},
                          {"pyramids", "pyramid_build_us", "kd_build_us", "pyramid_mean_us", "pyramid_median_us",
                           "kd_mean_us", "kd_median_us", "pyramid_free", "audited", "audit_violations"});
  for (std::size_t i = 0; i < res.trials.size(); ++i) {
    const TimingTrial& x = res.trials[i];
    t.rows.push_back({std::to_string(i), u64(x.pyramids), csv_number(x.pyramid_build_s * 1e6),
                      csv_number(x.kd_build_s * 1e6), u64(x.kd_points), csv_number(x.pyramid_mean_us),
                      csv_number(x.pyramid_median_us), csv_number(x.kd_mean_us), csv_number(x.kd_median_us),
                      std::to_string(x.pyramid_free), std::to_string(x.kd_free), std::to_string(x.audited),
                      std::to_string(x.audit_violations)});
  }
  return t;
}

CsvTable budget_csv(const BudgetConfig& cfg, const std::vector<BudgetRow>& rows) {
  nlohmann::json conf = common_json(cfg.common);
  conf["budgets_ms"] = cfg.budgets_ms;
  CsvTable t = make_table("budget", cfg.common, conf,
                          {"budget_ms", "trials", "mean_candidates", "mean_collision_free", "mean_pyramids",
                           "success_fraction", "mean_elapsed_ms"},
                          {"mean_candidates", "mean_collision_free", "mean_pyramids", "success_fraction",
                           "mean_elapsed_ms"});
  for (const BudgetRow& r : rows) {
    t.rows.push_back({csv_number(r.budget_ms), std::to_string(r.trials), csv_number(r.mean_candidates),
                      csv_number(r.mean_collision_free), csv_number(r.mean_pyramids), csv_number(r.success_fraction),
                      csv_number(r.mean_elapsed_ms)});
  }
  return t;
}

CsvTable sim_csv(const SimBenchConfig& cfg, const std::vector<SimLog>& logs) {
  nlohmann::json conf = common_json(cfg.common);
  conf["world"] = cfg.world_path ? nlohmann::json(*cfg.world_path) : nlohmann::json();
  conf["clutter_per_leg"] = cfg.clutter_per_leg;
  conf["budget_ms"] = cfg.budget_ms ? nlohmann::json(*cfg.budget_ms) : nlohmann::json();
  conf["budget_candidates"] = cfg.budget_candidates;
  conf["max_frames"] = cfg.max_frames;
  std::vector<std::string> header{"run", "frames", "success_fraction", "mean_candidates", "mean_pyramids",
                                  "max_speed", "distance_traveled", "min_clearance", "direction_rotations",
                                  "safety_violations", "reached_goal"};
  // With a wall-clock budget every outcome depends on timing.
  std::vector<std::string> timing;
  if (cfg.budget_ms) timing.assign(header.begin() + 1, header.end());
  CsvTable t = make_table("sim", cfg.common, conf, header, timing);
  for (std::size_t k = 0; k < logs.size(); ++k) {
    const SimSummary& s = logs[k].summary;
    t.rows.push_back({std::to_string(k), std::to_string(s.frames), csv_number(s.success_fraction),
                      csv_number(s.mean_candidates), csv_number(s.mean_pyramids), csv_number(s.max_speed),
                      csv_number(s.distance_traveled), csv_number(s.min_clearance),
                      std::to_string(s.direction_rotations), std::to_string(s.safety_violations),
                      s.reached_goal ? "1" : "0"});
  }
  return t;
}

nlohmann::json timing_summary_json(const TimingConfig& cfg, const TimingResult& res) {
  std::vector<double> p;
  std::vector<double> k;
  for (const auto& t : res.trials) {
    p.push_back(t.pyramid_mean_us);
    k.push_back(t.kd_mean_us);
  }
  const double pm = res.mean_pyramid_us();
  const double km = res.mean_kd_us();
  return {{"trials", cfg.common.trials},
          {"trajectories", cfg.trajectories},
          {"pyramid_mean_us", pm},
          {"pyramid_median_of_means_us", median(p)},
          {"kd_mean_us", km},
          {"kd_median_of_means_us", median(k)},
          {"kd_to_pyramid_ratio", pm > 0.0 ? km / pm : 0.0},
          {"mean_pyramids", res.mean_pyramids()},
          {"audit_violations", res.audit_violations()}};
}

}  // namespace pyramidplan
