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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "drag/evaluation.h"
#include "eval_internal.h"

namespace drag::eval {
namespace {

using internal::leaf_payoff;
using internal::stage_reward;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Children of an interior history in their frozen (action, allocation,
// successor) order. opener is called once per action with its successor
// row; visit once per child.
template <typename Opener, typename Visit>
void scan_children(const GameTree& tree, const DragInstance& inst,
                   HistoryId h, Opener opener, Visit visit) {
  const auto& actions = action_space(inst, tree.state[h]);
  const int types = static_cast<int>(inst.assets.size());
  int64_t cursor = tree.child_begin[h];
  for (int a = 0; a < static_cast<int>(actions.size()); ++a) {
    const auto succ = successor_distribution(inst, actions[a]);
    opener(a, actions[a]);
    for (int v = 0; v < types; ++v) {
      for (size_t k = 0; k < succ.size(); ++k) {
        visit(a, actions[a], v, succ[k].second, tree.child_id[cursor++]);
      }
    }
  }
}

}  // namespace

double type_value(const GameTree& tree, const DragInstance& instance,
                  const pbne::AttackerStrategy& sigma,
                  const pbne::DefenderStrategy& tau, int theta, HistoryId h) {
  std::vector<double> value(tree.num_histories, 0.0);
  for (HistoryId id = tree.num_histories - 1; id >= 0; --id) {
    if (tree.is_leaf(id)) {
      value[id] = leaf_payoff(instance, tree.state[id], theta);
      continue;
    }
    const double* move = sigma.row(id);
    const double* alloc = tau.row(id, theta);
    double total = 0.0;
    scan_children(
        tree, instance, id, [](int, int) {},
        [&](int a, int edge, int v, double pk, HistoryId child) {
          const double weight = move[a] * alloc[v];
          if (weight == 0.0) return;
          total += weight * pk *
                   (stage_reward(instance, edge, v, theta) + value[child]);
        });
    value[id] = total;
  }
  return value[h];
}

double ex_ante_value(const GameTree& tree, const DragInstance& instance,
                     const pbne::AttackerStrategy& sigma,
                     const pbne::DefenderStrategy& tau) {
  double total = 0.0;
  for (size_t t = 0; t < instance.assets.size(); ++t) {
    total += instance.prior[t] *
             type_value(tree, instance, sigma, tau, static_cast<int>(t));
  }
  return total;
}

FullInformationValue full_information_value(const DragInstance& instance) {
  if (instance.reward_mode == RewardMode::kCustomTable) {
    throw DragError(ErrorCode::kUnsupported,
                    "full-information benchmark is defined for the default "
                    "reward rule only, not custom tables");
  }
  const int types = static_cast<int>(instance.assets.size());
  const int n = instance.graph.num_nodes;
  std::vector<uint8_t> is_asset(n, 0);
  for (int a : instance.assets) is_asset[a] = 1;

  FullInformationValue out;
  out.per_type.resize(types, 0.0);
  for (int theta = 0; theta < types; ++theta) {
    if (is_asset[instance.s0]) {
      // Play ends where it starts.
      out.per_type[theta] = leaf_payoff(instance, instance.s0, theta);
      continue;
    }
    // With the asset public the defender's allocation is dominant (always
    // the true asset), so only the attacker optimizes: cheapest-arrival
    // dynamic program over (stage, node), where every move costs its edge
    // weight and arrival at any candidate ends play.
    const auto arrival = [&](int s) {
      return is_asset[s] ? leaf_payoff(instance, s, theta) : kInf;
    };
    std::vector<double> next(n, 0.0), cur(n, 0.0);
    for (int t = instance.horizon - 1; t >= 0; --t) {
      for (int s = 0; s < n; ++s) {
        if (is_asset[s]) continue;
        double best = kInf;
        for (int e : instance.out_edges[s]) {
          double val = instance.graph.edges[e].weight;
          for (const auto& [sp, p] : successor_distribution(instance, e)) {
            val += p * (is_asset[sp] ? arrival(sp) : next[sp]);
          }
          best = std::min(best, val);
        }
        cur[s] = best == kInf ? 0.0 : best;
      }
      std::swap(cur, next);
    }
    out.per_type[theta] = next[instance.s0];
  }
  for (int theta = 0; theta < types; ++theta) {
    out.mixture += instance.prior[theta] * out.per_type[theta];
  }
  return out;
}

BestResponse attacker_best_response(const GameTree& tree,
                                    const DragInstance& instance,
                                    const pbne::DefenderPlan& plan) {
  // Recovery validates the flow identities; the response itself works on
  // the raw plan masses, which already embed prior, allocations, and
  // transition probabilities along each branch.
  (void)pbne::recover_defender_policy(tree, instance, plan);
  const int types = static_cast<int>(instance.assets.size());

  BestResponse out;
  auto& sigma = out.attacker;
  sigma.sigma_begin.assign(tree.num_histories + 1, 0);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    const int width =
        tree.is_leaf(h) ? 0 : num_attacker_actions(tree, instance, h);
    sigma.sigma_begin[h + 1] = sigma.sigma_begin[h] + width;
  }
  sigma.sigma.assign(sigma.sigma_begin.back(), 0.0);

  std::vector<double> value(tree.num_histories, 0.0);
  for (HistoryId h = tree.num_histories - 1; h >= 0; --h) {
    const double* z = plan.block(h);
    if (tree.is_leaf(h)) {
      double total = 0.0;
      for (int t = 0; t < types; ++t) {
        total += z[t] * leaf_payoff(instance, tree.state[h], t);
      }
      value[h] = total;
      continue;
    }
    const int width = sigma.row_size(h);
    std::vector<double> action_value(width, 0.0);
    scan_children(
        tree, instance, h,
        [&](int a, int edge) {
          // Stage term: the plan mass on (theta, v) prices the move reward.
          double stage = 0.0;
          for (int t = 0; t < types; ++t) {
            for (int v = 0; v < types; ++v) {
              stage += z[static_cast<int64_t>(t) * types + v] *
                       stage_reward(instance, edge, v, t);
            }
          }
          action_value[a] = stage;
        },
        [&](int a, int, int, double, HistoryId child) {
          action_value[a] += value[child];
        });
    int best = 0;
    for (int a = 1; a < width; ++a) {
      if (action_value[a] < action_value[best]) best = a;
    }
    value[h] = action_value[best];
    sigma.sigma[sigma.sigma_begin[h] + best] = 1.0;
  }
  out.value = value.empty() ? 0.0 : value[0];
  return out;
}

BestResponse defender_best_response(const GameTree& tree,
                                    const DragInstance& instance,
                                    const pbne::AttackerPlan& plan) {
  (void)pbne::recover_attacker_policy(tree, instance, plan);
  const int types = static_cast<int>(instance.assets.size());

  BestResponse out;
  auto& tau = out.defender;
  tau.num_assets = types;
  tau.tau_begin.assign(tree.num_histories + 1, 0);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    const int width = tree.is_leaf(h) ? 0 : types * types;
    tau.tau_begin[h + 1] = tau.tau_begin[h] + width;
  }
  tau.tau.assign(tau.tau_begin.back(), 0.0);

  // Per-type values G[h * types + t]. The plan's eta weights exclude
  // transition probabilities, so each child contributes through its
  // branch probability explicitly.
  std::vector<double> G(static_cast<int64_t>(tree.num_histories) * types,
                        0.0);
  for (HistoryId h = tree.num_histories - 1; h >= 0; --h) {
    const double* eta = plan.block(h);
    if (tree.is_leaf(h)) {
      for (int t = 0; t < types; ++t) {
        G[static_cast<int64_t>(h) * types + t] =
            eta[0] * leaf_payoff(instance, tree.state[h], t);
      }
      continue;
    }
    // One pass over the children accumulates every (type, allocation)
    // candidate value at once.
    std::vector<double> cand(static_cast<size_t>(types) * types, 0.0);
    scan_children(
        tree, instance, h,
        [&](int a, int edge) {
          for (int t = 0; t < types; ++t) {
            for (int v = 0; v < types; ++v) {
              cand[static_cast<size_t>(t) * types + v] +=
                  eta[a] * stage_reward(instance, edge, v, t);
            }
          }
        },
        [&](int, int, int cv, double pk, HistoryId child) {
          for (int t = 0; t < types; ++t) {
            cand[static_cast<size_t>(t) * types + cv] +=
                pk * G[static_cast<int64_t>(child) * types + t];
          }
        });
    for (int t = 0; t < types; ++t) {
      int best_v = 0;
      for (int v = 1; v < types; ++v) {
        if (cand[static_cast<size_t>(t) * types + v] >
            cand[static_cast<size_t>(t) * types + best_v]) {
          best_v = v;
        }
      }
      G[static_cast<int64_t>(h) * types + t] =
          cand[static_cast<size_t>(t) * types + best_v];
      tau.tau[tau.tau_begin[h] + static_cast<int64_t>(t) * types + best_v] =
          1.0;
    }
  }
  for (int t = 0; t < types; ++t) {
    out.value += instance.prior[t] * G[t];
  }
  return out;
}

Exploitability exploitability(const GameTree& tree,
                              const DragInstance& instance,
                              const pbne::AttackerStrategy& sigma,
                              const pbne::DefenderStrategy& tau) {
  const auto att_plan = pbne::attacker_plan_from_strategy(tree, instance, sigma);
  const auto def_plan = pbne::defender_plan_from_strategy(tree, instance, tau);
  Exploitability out;
  out.defender_br_value = defender_best_response(tree, instance, att_plan).value;
  out.attacker_br_value = attacker_best_response(tree, instance, def_plan).value;
  out.absolute = out.defender_br_value - out.attacker_br_value;
  out.relative = out.absolute / std::max(1.0, std::fabs(out.attacker_br_value));
  return out;
}

double value_of_deception(double lp_value, double full_info_mixture) {
  if (full_info_mixture == 0.0) {
    throw DragError(ErrorCode::kUnsupported,
                    "value of deception is undefined at a zero "
                    "full-information value");
  }
  return (lp_value - full_info_mixture) / std::fabs(full_info_mixture);
}

std::vector<DeviationRow> deviation_table(
    const GameTree& tree, const DragInstance& instance,
    const pbne::EquilibriumSolution& equilibrium) {
  std::vector<DeviationRow> rows;
  const auto add = [&](const std::string& name, bool attacker_side,
                       double value) {
    rows.push_back(
        {name, attacker_side, value, value - equilibrium.game_value});
  };
  for (const char* name : {"RS-A", "HPSP-A", "LPSP-A"}) {
    const auto sigma = attacker_baseline(tree, instance, name);
    add(name, true,
        ex_ante_value(tree, instance, sigma, equilibrium.defender_strategy));
  }
  std::vector<std::string> defender_names = {"RS-D", "TC-D", "TO-D"};
  for (size_t k = 0; k < instance.assets.size(); ++k) {
    defender_names.push_back("C" + std::to_string(k) + "-D");
  }
  for (const std::string& name : defender_names) {
    const auto tau = defender_baseline(tree, instance, name);
    add(name, false,
        ex_ante_value(tree, instance, equilibrium.attacker_strategy, tau));
  }
  return rows;
}

}  // namespace drag::eval
