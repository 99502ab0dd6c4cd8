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

#ifndef DRAG_PBNE_H_
#define DRAG_PBNE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "drag/game_model.h"
#include "drag/game_tree.h"
#include "drag/lp_core.h"

// Equilibrium computation. The defender side is a single linear program over
// type-conditional realization plans z (joint probability of type, history,
// and allocation); the attacker side is its exact dual, over movement
// realization weights eta and value bounds q. Solving either one yields the
// game value; solving both certifies it through the duality gap.

namespace drag::pbne {

// z masses per history: interior histories hold a |Theta| x |V| block in
// (theta-major, allocation-minor) order; leaves hold one reach-mass scalar
// per type. ell is the defender's value bound per history.
struct DefenderPlan {
  std::vector<double> z;
  std::vector<int64_t> z_begin;   // Per history, size num_histories + 1.
  std::vector<double> ell;

  double* block(HistoryId h) { return z.data() + z_begin[h]; }
  const double* block(HistoryId h) const { return z.data() + z_begin[h]; }
  int block_size(HistoryId h) const {
    return static_cast<int>(z_begin[h + 1] - z_begin[h]);
  }
};

// eta per history: one weight per attacker action at interior histories, a
// single pass-through weight at leaves. q is the per-type value bound.
struct AttackerPlan {
  std::vector<double> eta;
  std::vector<int64_t> eta_begin;  // Per history, size num_histories + 1.
  std::vector<double> q;           // num_histories * |Theta|, theta-minor.

  double* block(HistoryId h) { return eta.data() + eta_begin[h]; }
  const double* block(HistoryId h) const { return eta.data() + eta_begin[h]; }
  int block_size(HistoryId h) const {
    return static_cast<int>(eta_begin[h + 1] - eta_begin[h]);
  }
};

// Behavioral strategies on the tree. Defender: per (history, theta), a
// distribution over allocations. Attacker: per history, a distribution over
// the attacker actions at that history. Leaves carry nothing.
struct DefenderStrategy {
  int num_assets = 0;
  std::vector<double> tau;         // Interior h: |Theta| x |V| block.
  std::vector<int64_t> tau_begin;  // Size num_histories + 1 (0-width leaves).

  const double* row(HistoryId h, int theta) const;
};

struct AttackerStrategy {
  std::vector<double> sigma;
  std::vector<int64_t> sigma_begin;  // Size num_histories + 1.

  const double* row(HistoryId h) const { return sigma.data() + sigma_begin[h]; }
  int row_size(HistoryId h) const {
    return static_cast<int>(sigma_begin[h + 1] - sigma_begin[h]);
  }
};

struct BeliefMap {
  std::vector<double> belief;      // num_histories * |Theta|.
  std::vector<uint8_t> off_path;   // 1 where the belief was carried forward.
};

struct SolveStats {
  lp::SolverStats defender, attacker;
  int64_t num_histories = 0;
  int64_t defender_variables = 0, defender_constraints = 0;
  int64_t attacker_variables = 0, attacker_constraints = 0;
  bool presolved = false;
  double total_seconds = 0.0;
};

struct EquilibriumSolution {
  double game_value = 0.0;        // Defender LP optimum.
  double duality_gap = 0.0;       // |defender - attacker| objective gap.
  DefenderPlan defender_plan;
  AttackerPlan attacker_plan;
  DefenderStrategy defender_strategy;
  AttackerStrategy attacker_strategy;
  BeliefMap beliefs;
  SolveStats stats;
};

// Exact realization-plan LPs over the tree. Variable and constraint order is
// frozen: stage-major by history id; within a history, defender variables
// are the z block (theta-major) then ell, attacker variables the eta block
// then q (theta order); value rows precede flow rows. prior_scale scales the
// root flow right-hand side (the optimum is positively homogeneous in the
// root belief, and scaled beliefs are legal inputs).
lp::LPProblem build_defender_lp(const GameTree& tree,
                                const DragInstance& instance,
                                double prior_scale = 1.0);
lp::LPProblem build_attacker_lp(const GameTree& tree,
                                const DragInstance& instance,
                                double prior_scale = 1.0);

// Plan extraction from LP solutions (either the problem's own primal, or the
// other LP's duals, which coincide at optimality).
DefenderPlan defender_plan_from_lp(const GameTree& tree,
                                   const DragInstance& instance,
                                   const std::vector<double>& primal);
AttackerPlan attacker_plan_from_lp(const GameTree& tree,
                                   const DragInstance& instance,
                                   const std::vector<double>& primal);
AttackerPlan attacker_plan_from_defender_duals(const GameTree& tree,
                                               const DragInstance& instance,
                                               const std::vector<double>& dual);

// Conditional-distribution recovery. Histories whose block mass is zero get
// the uniform fallback (the plan pins no behavior there). Plans must satisfy
// the flow identities within 1e-8 and carry no mass below -1e-10, else
// DragError(kInvalidPlan). Scaling a plan by a positive constant leaves the
// recovered strategy unchanged.
DefenderStrategy recover_defender_policy(const GameTree& tree,
                                         const DragInstance& instance,
                                         const DefenderPlan& plan);
AttackerStrategy recover_attacker_policy(const GameTree& tree,
                                         const DragInstance& instance,
                                         const AttackerPlan& plan);

// Realization plans induced by behavioral strategies (transition
// probabilities and the prior folded into z; eta is the bare product of
// attacker action probabilities).
DefenderPlan defender_plan_from_strategy(const GameTree& tree,
                                         const DragInstance& instance,
                                         const DefenderStrategy& strategy);
AttackerPlan attacker_plan_from_strategy(const GameTree& tree,
                                         const DragInstance& instance,
                                         const AttackerStrategy& strategy);

struct BeliefUpdateResult {
  Belief posterior;
  double normalizer = 0.0;   // Pr(observing v) under (b, tau_rows).
  bool off_path = false;     // normalizer below zero_tol; posterior == input.
};

// One Bayes step: posterior(theta) proportional to b(theta) *
// tau_rows[theta][v]. tau_rows is indexed [theta][alloc]. When the
// normalizer is at or below zero_tol the input belief is carried forward
// unchanged and flagged; the caller owns the off-path convention.
BeliefUpdateResult belief_update(const Belief& b,
                                 const std::vector<std::vector<double>>& tau_rows,
                                 int observed_alloc, double zero_tol = 1e-12);

// Beliefs along the path from the root to h under the given strategy,
// starting from the instance prior. Returns one belief per visited history
// (stage + 1 entries), with off-path flags.
struct BeliefTrajectory {
  std::vector<Belief> beliefs;
  std::vector<uint8_t> off_path;
};
BeliefTrajectory belief_trajectory(const GameTree& tree,
                                   const DragInstance& instance,
                                   const DefenderStrategy& strategy,
                                   HistoryId h);

// Beliefs for every history: the ratio of type reach-masses in the plan
// where the total mass exceeds zero_tol, the parent's belief carried
// forward (flagged) elsewhere. Equals iterated belief_update along every
// reachable path.
BeliefMap belief_map_from_plan(const GameTree& tree,
                               const DragInstance& instance,
                               const DefenderPlan& plan,
                               double zero_tol = 1e-12);

struct PbneOptions {
  lp::SolveOptions lp;
  int64_t size_cap = kDefaultSizeCap;
  // Relative duality-gap acceptance: |defender - attacker| <=
  // gap_tol * max(1, |value|).
  double gap_tol = 1e-6;
  // Eliminate leaf variables by exact substitution before solving (the
  // optimum and both plans are unchanged; leaf entries are reconstructed).
  bool presolve = true;
};

// Builds the tree, solves both LPs, recovers plans, strategies, and
// beliefs, and checks the duality gap (DragError(kSolverFailure) if the
// LPs disagree beyond gap_tol or either solve fails).
EquilibriumSolution solve_pbne(const DragInstance& instance,
                               const PbneOptions& options = {});
EquilibriumSolution solve_pbne(const DragInstance& instance,
                               const GameTree& tree,
                               const PbneOptions& options = {});

// Solution file round-trip. Strategies and beliefs are keyed by the
// canonical history encoding; plans are included when with_plans is set.
std::string solution_to_json(const GameTree& tree, const DragInstance& instance,
                             const EquilibriumSolution& solution,
                             bool with_plans);
struct LoadedSolution {
  double game_value = 0.0;
  double duality_gap = 0.0;
  DefenderStrategy defender_strategy;
  AttackerStrategy attacker_strategy;
  BeliefMap beliefs;
  bool has_plans = false;
  DefenderPlan defender_plan;
  AttackerPlan attacker_plan;
};
LoadedSolution solution_from_json(const GameTree& tree,
                                  const DragInstance& instance,
                                  const std::string& json_text);

}  // namespace drag::pbne

#endif  // DRAG_PBNE_H_
