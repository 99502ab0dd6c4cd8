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

#ifndef DRAG_EVALUATION_H_
#define DRAG_EVALUATION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "drag/game_model.h"
#include "drag/game_tree.h"
#include "drag/pbne.h"

// Everything downstream of an equilibrium (or any strategy profile):
// exact profile values by backward induction, full-information benchmarks,
// best-response oracles, named baselines, deviation tables, the value of
// deception, and seeded Monte-Carlo rollouts.

namespace drag::eval {

// Expected total payoff conditional on the true asset index theta, for the
// profile (sigma, tau), evaluated from history h down. Leaves return the
// terminal payoff.
double type_value(const GameTree& tree, const DragInstance& instance,
                  const pbne::AttackerStrategy& sigma,
                  const pbne::DefenderStrategy& tau, int theta,
                  HistoryId h = 0);

// Prior-weighted mixture of the per-type values from the root.
double ex_ante_value(const GameTree& tree, const DragInstance& instance,
                     const pbne::AttackerStrategy& sigma,
                     const pbne::DefenderStrategy& tau);

// Benchmark with the asset publicly known: the defender allocates to the
// true asset every stage, the attacker minimizes over movement plans.
// J(theta, s, t) = -m if s = theta's node; 0 if s is a decoy or t = T;
// else min over edges of the successor expectation of (w + J). Paper-default
// rewards only (custom tables: DragError(kUnsupported)).
struct FullInformationValue {
  std::vector<double> per_type;
  double mixture = 0.0;   // Prior-weighted.
};
FullInformationValue full_information_value(const DragInstance& instance);

// Best response of one side against the other side's realization plan.
// Values are exact optima of the restricted problem; tie-breaks take the
// lowest action index, so the responses are deterministic pure strategies
// (uniform only where a side has no action, which cannot happen at interior
// histories of a validated instance).
struct BestResponse {
  double value = 0.0;
  pbne::AttackerStrategy attacker;   // Filled by attacker_best_response.
  pbne::DefenderStrategy defender;   // Filled by defender_best_response.
};
BestResponse attacker_best_response(const GameTree& tree,
                                    const DragInstance& instance,
                                    const pbne::DefenderPlan& plan);
BestResponse defender_best_response(const GameTree& tree,
                                    const DragInstance& instance,
                                    const pbne::AttackerPlan& plan);

// defender_best_response(sigma).value - attacker_best_response(tau).value.
// Nonnegative for every profile; at an equilibrium it vanishes (within
// solver tolerance).
struct Exploitability {
  double defender_br_value = 0.0;
  double attacker_br_value = 0.0;
  double absolute = 0.0;
  double relative = 0.0;   // absolute / max(1, |attacker_br_value|).
};
Exploitability exploitability(const GameTree& tree,
                              const DragInstance& instance,
                              const pbne::AttackerStrategy& sigma,
                              const pbne::DefenderStrategy& tau);

// Named baseline strategies, materialized on the tree.
//   Attacker: RS-A (uniform over moves), HPSP-A / LPSP-A (shortest path
//   toward the highest- / lowest-prior asset, prior ties to the lowest
//   asset index, lowest-index edge among shortest-path moves).
//   Defender: RS-D (uniform allocation), TC-D (always the true asset),
//   TO-D (uniform over the decoys; the true asset only when there is no
//   decoy), C<k>-D (constant allocation to asset k, any type).
// Unknown names: DragError(kUnknownBaseline).
bool is_attacker_baseline(const std::string& name);
bool is_defender_baseline(const std::string& name);
pbne::AttackerStrategy attacker_baseline(const GameTree& tree,
                                         const DragInstance& instance,
                                         const std::string& name);
pbne::DefenderStrategy defender_baseline(const GameTree& tree,
                                         const DragInstance& instance,
                                         const std::string& name);

// (lp_value - full_info_mixture) / |full_info_mixture|; the relative gain
// the defender draws from the attacker's uncertainty.
// DragError(kUnsupported) when the full-information mixture is zero.
double value_of_deception(double lp_value, double full_info_mixture);

// One row per unilateral deviation from the equilibrium profile: every
// attacker baseline against tau*, every defender baseline against sigma*.
// Attacker deviations can only raise the value, defender deviations can
// only lower it.
struct DeviationRow {
  std::string name;
  bool attacker_side = false;
  double value = 0.0;
  double delta = 0.0;   // value - equilibrium value.
};
std::vector<DeviationRow> deviation_table(
    const GameTree& tree, const DragInstance& instance,
    const pbne::EquilibriumSolution& equilibrium);

// Seeded Monte-Carlo playout of a profile. Policies see only the history
// (the defender also sees its type); accumulated rewards stay inside the
// simulator. Episodes draw independent substreams derived from (seed,
// episode index), so results are bit-identical for a fixed seed regardless
// of thread count (DRAG_THREADS caps workers). fixed_theta pins the type
// instead of sampling the prior.
struct RolloutOptions {
  int64_t episodes = 10000;
  uint64_t seed = 0;
  std::optional<int> fixed_theta;
  int threads = 0;              // 0: DRAG_THREADS or hardware default.
  bool log_trajectories = false;
};
struct RolloutEpisode {
  int theta = 0;
  double reward = 0.0;
  std::string history;          // Canonical encoding of the realized play.
};
struct RolloutResult {
  double mean = 0.0;
  double std_error = 0.0;
  int64_t episodes = 0;
  std::vector<RolloutEpisode> log;   // Only when log_trajectories.
};
RolloutResult rollout(const GameTree& tree, const DragInstance& instance,
                      const pbne::AttackerStrategy& sigma,
                      const pbne::DefenderStrategy& tau,
                      const RolloutOptions& options);

// Writes per-type trajectory plots (grid instances only) and a per-stage
// allocation frequency plot from a rollout log. Returns the file names
// written into `directory` (created if absent). Requires a result produced
// with log_trajectories (DragError(kUnsupported) otherwise).
std::vector<std::string> write_rollout_svgs(const DragInstance& instance,
                                            const RolloutResult& result,
                                            const std::string& directory);

// Aggregate report for the evaluate command.
struct EvaluationReport {
  double game_value = 0.0;
  double duality_gap = 0.0;
  std::vector<double> full_info_per_type;
  double full_info_mixture = 0.0;
  std::optional<double> value_of_deception;
  Exploitability exploitability;
  std::vector<DeviationRow> deviations;
  std::string tie_break = "lowest-index";
  std::optional<RolloutResult> rollout;
};
std::string report_to_json(const EvaluationReport& report);

}  // namespace drag::eval

#endif  // DRAG_EVALUATION_H_
