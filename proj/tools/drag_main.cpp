// Copyright 2026 The DRAG Solver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front door. Subcommands: solve, validate, evaluate, rollout.
// All numeric stdout is fixed at six decimals; full precision lives in the
// JSON files. Errors are JSON objects on stderr with exit code 1 for
// validation/input problems, 2 for solver failures, 3 for size-cap hits.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drag/evaluation.h"
#include "drag/game_model.h"
#include "drag/game_tree.h"
#include "drag/lp_core.h"
#include "drag/pbne.h"
#include "json.hpp"

namespace {

using drag::DragError;
using drag::DragInstance;
using drag::ErrorCode;
using drag::GameTree;
using nlohmann::json;

struct RunConfig {
  std::string instance_path;
  std::string out_path;
  std::string lp_format;
  std::string lp_dir;
  std::string svg_dir;
  std::string defender = "LP";
  std::string attacker = "LP";
  double gap_tol = 1e-6;
  double feas_tol = 1e-9;
  int64_t size_cap = drag::kDefaultSizeCap;
  uint64_t seed = 0;
  int64_t episodes = 10000;
  bool full_plan = false;
};

const char* code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPriorOffSimplex: return "prior_off_simplex";
    case ErrorCode::kPriorSizeMismatch: return "prior_size_mismatch";
    case ErrorCode::kNonpositiveWeight: return "nonpositive_weight";
    case ErrorCode::kUnnormalizedTransition: return "unnormalized_transition";
    case ErrorCode::kInvalidNode: return "invalid_node";
    case ErrorCode::kInvalidEdge: return "invalid_edge";
    case ErrorCode::kDuplicateEdge: return "duplicate_edge";
    case ErrorCode::kNoAssets: return "no_assets";
    case ErrorCode::kDuplicateAsset: return "duplicate_asset";
    case ErrorCode::kInvalidHorizon: return "invalid_horizon";
    case ErrorCode::kInvalidThreatLevel: return "invalid_threat_level";
    case ErrorCode::kDeadEnd: return "dead_end";
    case ErrorCode::kDisconnectedAsset: return "disconnected_asset";
    case ErrorCode::kBadGrid: return "bad_grid";
    case ErrorCode::kParseError: return "parse_error";
    case ErrorCode::kBadHistory: return "bad_history";
    case ErrorCode::kSizeCapExceeded: return "size_cap_exceeded";
    case ErrorCode::kSolverFailure: return "solver_failure";
    case ErrorCode::kInvalidPlan: return "invalid_plan";
    case ErrorCode::kUnknownBaseline: return "unknown_baseline";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kIoError: return "io_error";
  }
  return "unknown";
}

int exit_code_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSizeCapExceeded: return 3;
    case ErrorCode::kSolverFailure: return 2;
    default: return 1;
  }
}

void emit_error(const std::string& code, const std::string& message) {
  json j;
  j["error"] = {{"code", code}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DragError(ErrorCode::kIoError, "cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw DragError(ErrorCode::kIoError, "cannot write " + path);
  }
}

drag::pbne::PbneOptions solver_options(const RunConfig& cfg) {
  drag::pbne::PbneOptions opts;
  opts.gap_tol = cfg.gap_tol;
  opts.lp.feas_tol = cfg.feas_tol;
  opts.size_cap = cfg.size_cap;
  return opts;
}

std::ostream& num(std::ostream& os) {
  return os << std::fixed << std::setprecision(6);
}

// Profile selector: "LP" is the equilibrium side, known baseline names are
// materialized on the tree, anything else is read as a solution file.
bool wants_equilibrium(const RunConfig& cfg) {
  return cfg.defender == "LP" || cfg.attacker == "LP";
}

drag::pbne::AttackerStrategy resolve_attacker(
    const GameTree& tree, const DragInstance& inst, const std::string& name,
    const drag::pbne::EquilibriumSolution* equilibrium) {
  if (name == "LP") return equilibrium->attacker_strategy;
  if (drag::eval::is_attacker_baseline(name)) {
    return drag::eval::attacker_baseline(tree, inst, name);
  }
  if (std::filesystem::exists(name)) {
    return drag::pbne::solution_from_json(tree, inst, read_file(name))
        .attacker_strategy;
  }
  throw DragError(ErrorCode::kUnknownBaseline,
                  "'" + name +
                      "' is neither a known attacker baseline nor a file");
}

drag::pbne::DefenderStrategy resolve_defender(
    const GameTree& tree, const DragInstance& inst, const std::string& name,
    const drag::pbne::EquilibriumSolution* equilibrium) {
  if (name == "LP") return equilibrium->defender_strategy;
  if (drag::eval::is_defender_baseline(name)) {
    return drag::eval::defender_baseline(tree, inst, name);
  }
  if (std::filesystem::exists(name)) {
    return drag::pbne::solution_from_json(tree, inst, read_file(name))
        .defender_strategy;
  }
  throw DragError(ErrorCode::kUnknownBaseline,
                  "'" + name +
                      "' is neither a known defender baseline nor a file");
}

int cmd_solve(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  DragInstance inst = drag::load_instance(cfg.instance_path);
  const GameTree tree = drag::build_tree(inst, cfg.size_cap);
  const auto solution = drag::pbne::solve_pbne(inst, tree, solver_options(cfg));

  if (!cfg.lp_format.empty()) {
    if (cfg.lp_dir.empty()) {
      throw DragError(ErrorCode::kIoError, "--export-lp requires --lp-dir");
    }
    std::filesystem::create_directories(cfg.lp_dir);
    const bool mps = cfg.lp_format == "mps";
    const auto format = mps ? drag::lp::Format::kMps : drag::lp::Format::kLpText;
    const std::string ext = mps ? ".mps" : ".lp";
    const std::filesystem::path dir(cfg.lp_dir);
    write_file((dir / ("defender" + ext)).string(),
               drag::lp::export_lp(drag::pbne::build_defender_lp(tree, inst),
                                   format));
    write_file((dir / ("attacker" + ext)).string(),
               drag::lp::export_lp(drag::pbne::build_attacker_lp(tree, inst),
                                   format));
  }
  if (!cfg.out_path.empty()) {
    write_file(cfg.out_path,
               drag::pbne::solution_to_json(tree, inst, solution,
                                            cfg.full_plan));
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  num(std::cout) << "game_value " << solution.game_value << "\n"
                 << "duality_gap " << solution.duality_gap << "\n";
  std::cout << "histories " << tree.num_histories << "\n";
  num(std::cout) << "wall_seconds " << seconds << "\n";
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  if (cfg.out_path.empty()) {
    throw DragError(ErrorCode::kIoError,
                    "validate reads the solution from --out");
  }
  DragInstance inst = drag::load_instance(cfg.instance_path);
  const GameTree tree = drag::build_tree(inst, cfg.size_cap);
  const auto loaded =
      drag::pbne::solution_from_json(tree, inst, read_file(cfg.out_path));

  const auto defender_plan =
      loaded.has_plans
          ? loaded.defender_plan
          : drag::pbne::defender_plan_from_strategy(tree, inst,
                                                    loaded.defender_strategy);
  const auto attacker_plan =
      loaded.has_plans
          ? loaded.attacker_plan
          : drag::pbne::attacker_plan_from_strategy(tree, inst,
                                                    loaded.attacker_strategy);

  bool all_pass = true;
  const auto report = [&](const std::string& name, bool pass,
                          const std::string& detail) {
    all_pass = all_pass && pass;
    std::cout << "check " << name << ": " << (pass ? "pass" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
  };
  const auto guarded = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const DragError& e) {
      report(name, false, e.what());
    }
  };

  guarded("defender-flow", [&] {
    (void)drag::pbne::recover_defender_policy(tree, inst, defender_plan);
    report("defender-flow", true, "");
  });
  guarded("attacker-flow", [&] {
    (void)drag::pbne::recover_attacker_policy(tree, inst, attacker_plan);
    report("attacker-flow", true, "");
  });

  guarded("beliefs", [&] {
    const auto beliefs =
        drag::pbne::belief_map_from_plan(tree, inst, defender_plan);
    double worst = 0.0;
    for (size_t i = 0; i < beliefs.belief.size(); ++i) {
      worst = std::max(worst,
                       std::fabs(beliefs.belief[i] - loaded.beliefs.belief[i]));
    }
    std::ostringstream detail;
    detail << "max deviation " << std::scientific << std::setprecision(2)
           << worst;
    report("beliefs", worst <= 1e-6, detail.str());
  });

  const double scale = std::max(1.0, std::fabs(loaded.game_value));
  guarded("value-replay", [&] {
    const double replay = drag::eval::ex_ante_value(
        tree, inst, loaded.attacker_strategy, loaded.defender_strategy);
    std::ostringstream detail;
    detail << "profile value " << std::fixed << std::setprecision(6) << replay
           << " vs " << loaded.game_value;
    report("value-replay",
           std::fabs(replay - loaded.game_value) <= cfg.gap_tol * scale,
           detail.str());
  });
  {
    std::ostringstream detail;
    detail << "gap " << std::scientific << std::setprecision(2)
           << loaded.duality_gap;
    report("duality-gap", loaded.duality_gap <= cfg.gap_tol * scale,
           detail.str());
  }
  guarded("exploitability", [&] {
    const auto ex = drag::eval::exploitability(
        tree, inst, loaded.attacker_strategy, loaded.defender_strategy);
    std::ostringstream detail;
    detail << "relative " << std::scientific << std::setprecision(2)
           << ex.relative;
    report("exploitability", ex.relative <= cfg.gap_tol, detail.str());
  });

  return all_pass ? 0 : 1;
}

int cmd_evaluate(const RunConfig& cfg) {
  DragInstance inst = drag::load_instance(cfg.instance_path);
  const GameTree tree = drag::build_tree(inst, cfg.size_cap);
  const auto solution = drag::pbne::solve_pbne(inst, tree, solver_options(cfg));

  if (cfg.defender == "LP" && cfg.attacker == "LP") {
    drag::eval::EvaluationReport report;
    report.game_value = solution.game_value;
    report.duality_gap = solution.duality_gap;
    if (inst.reward_mode == drag::RewardMode::kPaperDefault) {
      const auto fi = drag::eval::full_information_value(inst);
      report.full_info_per_type = fi.per_type;
      report.full_info_mixture = fi.mixture;
      if (fi.mixture != 0.0) {
        report.value_of_deception =
            drag::eval::value_of_deception(solution.game_value, fi.mixture);
      }
    }
    report.exploitability = drag::eval::exploitability(
        tree, inst, solution.attacker_strategy, solution.defender_strategy);
    report.deviations = drag::eval::deviation_table(tree, inst, solution);

    const std::string text = drag::eval::report_to_json(report);
    if (!cfg.out_path.empty()) write_file(cfg.out_path, text);

    num(std::cout) << "game_value " << report.game_value << "\n"
                   << "duality_gap " << report.duality_gap << "\n"
                   << "full_info_mixture " << report.full_info_mixture << "\n";
    if (report.value_of_deception) {
      num(std::cout) << "value_of_deception " << *report.value_of_deception
                     << "\n";
    }
    num(std::cout) << "exploitability_relative "
                   << report.exploitability.relative << "\n";
    for (const auto& row : report.deviations) {
      num(std::cout) << "deviation " << row.name << " " << row.value << " "
                     << (row.delta >= 0 ? "+" : "") << row.delta << "\n";
    }
    return 0;
  }

  const auto sigma = resolve_attacker(tree, inst, cfg.attacker, &solution);
  const auto tau = resolve_defender(tree, inst, cfg.defender, &solution);
  const double value = drag::eval::ex_ante_value(tree, inst, sigma, tau);
  const double tol = 1e-9 * std::max(1.0, std::fabs(solution.game_value));
  const char* marker = value > solution.game_value + tol   ? ">"
                       : value < solution.game_value - tol ? "<"
                                                           : "=";
  num(std::cout) << "profile_value " << value << "\n"
                 << "game_value " << solution.game_value << "\n";
  std::cout << "comparison " << marker << "\n";
  if (!cfg.out_path.empty()) {
    json j;
    j["attacker"] = cfg.attacker;
    j["defender"] = cfg.defender;
    j["profile_value"] = value;
    j["game_value"] = solution.game_value;
    j["comparison"] = marker;
    write_file(cfg.out_path, j.dump(2));
  }
  return 0;
}

int cmd_rollout(const RunConfig& cfg) {
  DragInstance inst = drag::load_instance(cfg.instance_path);
  const GameTree tree = drag::build_tree(inst, cfg.size_cap);

  drag::pbne::EquilibriumSolution solution;
  if (wants_equilibrium(cfg)) {
    solution = drag::pbne::solve_pbne(inst, tree, solver_options(cfg));
  }
  const auto sigma = resolve_attacker(tree, inst, cfg.attacker, &solution);
  const auto tau = resolve_defender(tree, inst, cfg.defender, &solution);

  drag::eval::RolloutOptions opts;
  opts.episodes = cfg.episodes;
  opts.seed = cfg.seed;
  opts.log_trajectories = !cfg.svg_dir.empty() || !cfg.out_path.empty();
  const auto result = drag::eval::rollout(tree, inst, sigma, tau, opts);

  num(std::cout) << "mean " << result.mean << "\n"
                 << "std_error " << result.std_error << "\n";
  std::cout << "episodes " << result.episodes << "\n";

  if (!cfg.out_path.empty()) {
    json j;
    j["mean"] = result.mean;
    j["std_error"] = result.std_error;
    j["episodes"] = result.episodes;
    json log = json::array();
    for (const auto& ep : result.log) {
      log.push_back({{"theta", ep.theta},
                     {"reward", ep.reward},
                     {"history", ep.history}});
    }
    j["log"] = std::move(log);
    write_file(cfg.out_path, j.dump(2));
  }
  if (!cfg.svg_dir.empty()) {
    for (const std::string& name :
         drag::eval::write_rollout_svgs(inst, result, cfg.svg_dir)) {
      std::cout << "svg " << name << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium solver for deceptive resource allocation games"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--instance", cfg.instance_path, "Instance JSON file")
        ->required();
    cmd->add_option("--out", cfg.out_path, "Output (or input) JSON file");
    cmd->add_option("--gap-tol", cfg.gap_tol, "Relative duality-gap tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--feas-tol", cfg.feas_tol, "LP feasibility tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--size-cap", cfg.size_cap, "Maximum history count")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* solve = app.add_subcommand("solve", "Compute the equilibrium");
  add_common(solve);
  solve->add_option("--export-lp", cfg.lp_format, "Also export both LPs")
      ->check(CLI::IsMember({"mps", "lp"}));
  solve->add_option("--lp-dir", cfg.lp_dir, "Directory for LP exports");
  solve->add_flag("--full-plan", cfg.full_plan,
                  "Include realization plans in the solution file");

  CLI::App* validate =
      app.add_subcommand("validate", "Check a solution file against its game");
  add_common(validate);

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Report on a profile or the equilibrium");
  add_common(evaluate);
  evaluate->add_option("--defender", cfg.defender,
                       "LP, baseline name, or solution file");
  evaluate->add_option("--attacker", cfg.attacker,
                       "LP, baseline name, or solution file");

  CLI::App* rollout = app.add_subcommand("rollout", "Monte-Carlo playout");
  add_common(rollout);
  rollout->add_option("--defender", cfg.defender,
                      "LP, baseline name, or solution file");
  rollout->add_option("--attacker", cfg.attacker,
                      "LP, baseline name, or solution file");
  rollout->add_option("--seed", cfg.seed, "Simulation seed");
  rollout->add_option("--episodes", cfg.episodes, "Episode count")
      ->check(CLI::PositiveNumber);
  rollout->add_option("--svg", cfg.svg_dir, "Directory for trajectory plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    emit_error("usage", e.what());
    return 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(cfg);
    if (validate->parsed()) return cmd_validate(cfg);
    if (evaluate->parsed()) return cmd_evaluate(cfg);
    return cmd_rollout(cfg);
  } catch (const DragError& e) {
    emit_error(code_name(e.code()), e.what());
    return exit_code_of(e.code());
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
}
