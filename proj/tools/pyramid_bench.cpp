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

// pyramid_bench: Monte Carlo benchmarks and closed-loop runs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pyramidplan/bench.hpp"

namespace pp = pyramidplan;

namespace {

struct Shared {
  std::uint64_t seed = 1;
  std::optional<int> trials;
  std::optional<int> width;
  std::optional<int> height;
  std::optional<int> threads;
  double radius = 0.3;
  std::string out = "-";
};

void add_shared(CLI::App* cmd, Shared& s) {
  cmd->add_option("--seed", s.seed, "Base random seed");
  cmd->add_option("--trials", s.trials, "Number of trials (scenes or runs)")->check(CLI::PositiveNumber);
  cmd->add_option("--width", s.width, "Image width in pixels")->check(CLI::Range(2, 1 << 14));
  cmd->add_option("--height", s.height, "Image height in pixels")->check(CLI::Range(2, 1 << 14));
  cmd->add_option("--threads", s.threads, "Worker threads (default: BENCH_THREADS or 1)")->check(CLI::PositiveNumber);
  cmd->add_option("--radius", s.radius, "Vehicle radius in meters")->check(CLI::PositiveNumber);
  cmd->add_option("--out", s.out, "Output CSV path, - for stdout");
}

void apply(const Shared& s, pp::BenchCommon& c) {
  c.seed = s.seed;
  if (s.trials) c.trials = *s.trials;
  if (s.width) c.width = *s.width;
  if (s.height) c.height = *s.height;
  c.threads = pp::resolve_threads(s.threads);
  c.vehicle_radius = s.radius;
}

void emit(const pp::CsvTable& table, const std::string& out) {
  if (out == "-") {
    table.write(std::cout);
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out);
  table.write(f);
}

std::filesystem::path sibling(const std::string& out, const std::string& suffix) {
  std::filesystem::path p(out);
  return p.parent_path() / (p.stem().string() + suffix);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pyramid collision-checking benchmarks"};
  app.require_subcommand(1);

  Shared cons_s;
  pp::ConservativenessConfig cons;
  std::vector<std::string> caps_raw{"1", "4", "16", "64"};
  auto* cons_cmd = app.add_subcommand("conservativeness", "Over-conservativeness versus pyramid cap");
  add_shared(cons_cmd, cons_s);
  cons_cmd->add_option("--caps", caps_raw, "Pyramid caps; 'none' adds an uncapped row")->delimiter(',');
  cons_cmd->add_option("--trajectories", cons.trajectories, "Candidates per scene")->check(CLI::PositiveNumber);

  Shared tim_s;
  pp::TimingConfig tim;
  auto* tim_cmd = app.add_subcommand("timing", "Per-trajectory check time, pyramids versus k-d tree");
  add_shared(tim_cmd, tim_s);
  tim_cmd->add_option("--kd-samples", tim.kd_samples, "Samples per trajectory for the k-d check")
      ->check(CLI::Range(2, 1 << 20));
  tim_cmd->add_option("--trajectories", tim.trajectories, "Trajectories per scene")->check(CLI::PositiveNumber);
  tim_cmd->add_option("--build-budget-ms", tim.build_budget_s, "Pyramid pre-generation budget in ms")
      ->transform([](std::string v) { return std::to_string(std::stod(v) * 1e-3); });
  tim_cmd->add_option("--audit-every", tim.audit_every, "Oracle-audit every k-th free verdict (0: off)")
      ->check(CLI::NonNegativeNumber);

  Shared bud_s;
  pp::BudgetConfig bud;
  auto* bud_cmd = app.add_subcommand("budget", "Planner candidates versus time budget");
  add_shared(bud_cmd, bud_s);
  bud_cmd->add_option("--budgets-ms", bud.budgets_ms, "Planning budgets in ms")->delimiter(',');

  Shared sim_s;
  pp::SimBenchConfig sim;
  std::optional<std::string> world;
  std::optional<double> budget_ms;
  auto* sim_cmd = app.add_subcommand("sim", "Closed-loop flights through the U-tunnel");
  add_shared(sim_cmd, sim_s);
  sim_cmd->add_option("--world", world, "World JSON (scene plus optional start and goal)");
  sim_cmd->add_option("--budget-ms", budget_ms, "Wall-clock planning budget per frame in ms")
      ->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--budget-candidates", sim.budget_candidates, "Candidates per frame when no --budget-ms");
  sim_cmd->add_option("--clutter", sim.clutter_per_leg, "Clutter boxes per leg")->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--max-frames", sim.max_frames, "Frame limit per run")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cons_cmd) {
      apply(cons_s, cons.common);
      cons.caps.clear();
      for (const std::string& c : caps_raw) {
        if (c == "none" || c == "inf") {
          cons.include_uncapped = true;
        } else {
          const long long v = std::stoll(c);
          if (v < 1) throw std::invalid_argument("pyramid caps must be at least 1");
          cons.caps.push_back(static_cast<std::size_t>(v));
        }
      }
      const pp::ConservativenessResult res = pp::conservativeness_sweep(cons);
      emit(pp::conservativeness_csv(cons, res), cons_s.out);
      if (res.false_free_total() > 0) {
        std::cerr << "safety violation: " << res.false_free_total() << " trajectories wrongly labeled free\n";
        return 1;
      }
      return 0;
    }
    if (*tim_cmd) {
      apply(tim_s, tim.common);
      tim.common.threads = 1;
      const pp::TimingResult res = pp::timing_benchmark(tim);
      emit(pp::timing_csv(tim, res), tim_s.out);
      const nlohmann::json summary = pp::timing_summary_json(tim, res);
      if (tim_s.out == "-") {
        std::cerr << summary.dump(2) << '\n';
      } else {
        std::ofstream(sibling(tim_s.out, "_summary.json")) << summary.dump(2) << '\n';
      }
      if (res.audit_violations() > 0) {
        std::cerr << "safety violation: pyramid verdicts contradicted by the oracle\n";
        return 1;
      }
      return 0;
    }
    if (*bud_cmd) {
      bud.common.width = 640;
      bud.common.height = 480;
      bud.common.trials = 20;
      apply(bud_s, bud.common);
      for (double b : bud.budgets_ms) {
        if (!(b >= 0.0)) throw std::invalid_argument("budgets must be non-negative");
      }
      emit(pp::budget_csv(bud, pp::budget_sweep(bud)), bud_s.out);
      return 0;
    }
    if (*sim_cmd) {
      sim.common.trials = 10;
      apply(sim_s, sim.common);
      sim.world_path = world;
      sim.budget_ms = budget_ms;
      const std::vector<pp::SimLog> logs = pp::run_sim(sim);
      emit(pp::sim_csv(sim, logs), sim_s.out);
      int violations = 0;
      for (std::size_t k = 0; k < logs.size(); ++k) {
        violations += logs[k].summary.safety_violations;
        if (!logs[k].diagnostic.empty()) std::cerr << "run " << k << ": " << logs[k].diagnostic << '\n';
        if (sim_s.out != "-") {
          const std::string tag = "_run" + std::to_string(k);
          pp::write_sim_log(logs[k], sibling(sim_s.out, tag + ".jsonl"), sibling(sim_s.out, tag + "_summary.json"));
        }
      }
      return violations > 0 ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
