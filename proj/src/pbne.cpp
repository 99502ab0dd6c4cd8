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
//
// The two equilibrium programs are exact duals: defender variables (z, ell)
// pair with attacker rows (value, flow) and vice versa. Both builders walk
// the tree in the same frozen order so the pairing holds index by index.
// The optional presolve removes leaf variables by substituting their flow
// and value identities into the parent rows; it changes neither optimum.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "drag/game_model.h"
#include "drag/game_tree.h"
#include "drag/lp_core.h"
#include "drag/pbne.h"

namespace drag::pbne {
namespace {

using json = nlohmann::json;

constexpr double kFlowTol = 1e-8;
constexpr double kMassFloor = -1e-10;

// Stage reward for (history h, action u as edge index, allocation v, type).
// Interior histories never contain an asset, so the paper-default prefix
// condition is already satisfied.
double stage_reward(const DragInstance& inst, int edge_index, int alloc,
                    int theta) {
  if (inst.reward_mode == RewardMode::kCustomTable) {
    auto it = inst.reward_table.find({theta, edge_index, alloc});
    return it == inst.reward_table.end() ? 0.0 : it->second;
  }
  return alloc == theta ? inst.graph.edges[edge_index].weight : 0.0;
}

double leaf_payoff(const DragInstance& inst, int state, int theta) {
  return state == inst.assets[theta] ? -inst.threat_level : 0.0;
}

// Frozen variable/row layout shared by the builders and the extractors.
struct LpLayout {
  int types = 0;
  std::vector<int> nact;                  // Attacker actions per history.
  std::vector<int64_t> dvar, drow;        // Defender prefixes, size H + 1.
  std::vector<int64_t> avar, arow;        // Attacker prefixes, size H + 1.
  std::vector<uint8_t> skipped;           // Presolved-away leaves.

  int64_t z_at(HistoryId h, int theta, int v) const {
    return dvar[h] + static_cast<int64_t>(theta) * types + v;
  }
  int64_t z_leaf_at(HistoryId h, int theta) const { return dvar[h] + theta; }
  int64_t ell_at(HistoryId h) const { return dvar[h + 1] - 1; }
  int64_t dvalue_row(HistoryId h, int u) const { return drow[h] + u; }
  int64_t dflow_row(HistoryId h, int theta, bool leaf) const {
    return drow[h] + (leaf ? 1 : nact[h]) + theta;
  }
  int64_t eta_at(HistoryId h, int u) const { return avar[h] + u; }
  int64_t q_at(HistoryId h, int theta, bool leaf) const {
    return avar[h] + (leaf ? 1 : nact[h]) + theta;
  }
  int64_t avalue_row(HistoryId h, int theta, int v, bool leaf) const {
    return arow[h] + (leaf ? theta
                           : static_cast<int64_t>(theta) * types + v);
  }
  int64_t aflow_row(HistoryId h) const { return arow[h + 1] - 1; }
};

LpLayout layout_of(const GameTree& tree, const DragInstance& inst,
                   bool reduce) {
  LpLayout lay;
  lay.types = static_cast<int>(inst.assets.size());
  const int64_t h_count = tree.num_histories;
  lay.nact.resize(h_count, 0);
  lay.skipped.assign(h_count, 0);
  lay.dvar.assign(h_count + 1, 0);
  lay.drow.assign(h_count + 1, 0);
  lay.avar.assign(h_count + 1, 0);
  lay.arow.assign(h_count + 1, 0);
  for (HistoryId h = 0; h < h_count; ++h) {
    const bool leaf = tree.is_leaf(h);
    if (!leaf) lay.nact[h] = num_attacker_actions(tree, inst, h);
    const bool skip = reduce && leaf && h > 0;
    lay.skipped[h] = skip;
    int64_t dv = 0, dr = 0, av = 0, ar = 0;
    if (!skip) {
      if (leaf) {
        dv = lay.types + 1;            // z per type, ell.
        dr = 1 + lay.types;            // Value row, flow per type.
        av = 1 + lay.types;            // eta, q per type.
        ar = lay.types + 1;            // Value per type, flow.
      } else {
        dv = static_cast<int64_t>(lay.types) * lay.types + 1;
        dr = lay.nact[h] + lay.types;
        av = lay.nact[h] + lay.types;
        ar = static_cast<int64_t>(lay.types) * lay.types + 1;
      }
    }
    lay.dvar[h + 1] = lay.dvar[h] + dv;
    lay.drow[h + 1] = lay.drow[h] + dr;
    lay.avar[h + 1] = lay.avar[h] + av;
    lay.arow[h + 1] = lay.arow[h] + ar;
  }
  return lay;
}

// Children of h in creation order, tagged with (action index, allocation,
// transition probability). Mirrors the expansion order of build_tree.
template <typename Fn>
void for_each_child(const GameTree& tree, const DragInstance& inst,
                    HistoryId h, Fn&& fn) {
  if (tree.is_leaf(h)) return;
  const std::vector<int>& actions = action_space(inst, tree.state[h]);
  const int types = static_cast<int>(inst.assets.size());
  int64_t c = tree.child_begin[h];
  for (int u = 0; u < static_cast<int>(actions.size()); ++u) {
    const auto succ = successor_distribution(inst, actions[u]);
    for (int v = 0; v < types; ++v) {
      for (const auto& [state, prob] : succ) {
        (void)state;
        fn(tree.child_id[c], u, v, actions[u], prob);
        ++c;
      }
    }
  }
}

// Sparse row accumulator so folded coefficients merge before insertion.
class RowBuffer {
 public:
  explicit RowBuffer(int64_t num_vars) : value_(num_vars, 0.0) {}
  void add(int64_t col, double v) {
    if (value_[col] == 0.0 && v != 0.0) touched_.push_back(col);
    value_[col] += v;
  }
  void flush(lp::LPProblem* p, int row) {
    for (int64_t col : touched_) {
      if (value_[col] != 0.0) {
        p->add_coefficient(row, static_cast<int>(col), value_[col]);
      }
      value_[col] = 0.0;
    }
    touched_.clear();
  }

 private:
  std::vector<double> value_;
  std::vector<int64_t> touched_;
};

lp::LPProblem build_defender_impl(const GameTree& tree,
                                  const DragInstance& inst, double prior_scale,
                                  bool reduce) {
  const LpLayout lay = layout_of(tree, inst, reduce);
  const int types = lay.types;
  lp::LPProblem p;
  p.set_objective_sense(lp::Sense::kMaximize);

  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    if (lay.skipped[h]) continue;
    const std::string hs = std::to_string(h);
    if (tree.is_leaf(h)) {
      for (int t = 0; t < types; ++t) {
        p.add_variable("z" + hs + "_" + std::to_string(t), 0.0, lp::kInf);
      }
    } else {
      for (int t = 0; t < types; ++t) {
        for (int v = 0; v < types; ++v) {
          p.add_variable(
              "z" + hs + "_" + std::to_string(t) + "_" + std::to_string(v),
              0.0, lp::kInf);
        }
      }
    }
    p.add_variable("l" + hs, -lp::kInf, lp::kInf, h == 0 ? 1.0 : 0.0);
  }

  RowBuffer buf(p.num_variables());
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    if (lay.skipped[h]) continue;
    const std::string hs = std::to_string(h);
    const bool leaf = tree.is_leaf(h);
    if (leaf) {
      const int row =
          p.add_constraint("v" + hs, lp::Relation::kLe, 0.0);
      buf.add(lay.ell_at(h), 1.0);
      for (int t = 0; t < types; ++t) {
        buf.add(lay.z_leaf_at(h, t), -leaf_payoff(inst, tree.state[h], t));
      }
      buf.flush(&p, row);
    } else {
      // One value row per attacker action; child terms fold in when the
      // child was eliminated.
      std::vector<int> rows(lay.nact[h]);
      for (int u = 0; u < lay.nact[h]; ++u) {
        rows[u] = p.add_constraint("v" + hs + "_" + std::to_string(u),
                                   lp::Relation::kLe, 0.0);
      }
      int current = -1;
      for_each_child(tree, inst, h,
                     [&](HistoryId child, int u, int v, int edge, double prob) {
                       if (u != current) {
                         if (current >= 0) buf.flush(&p, rows[current]);
                         current = u;
                         buf.add(lay.ell_at(h), 1.0);
                         for (int t = 0; t < types; ++t) {
                           for (int a = 0; a < types; ++a) {
                             buf.add(lay.z_at(h, t, a),
                                     -stage_reward(inst, edge, a, t));
                           }
                         }
                       }
                       if (lay.skipped[child]) {
                         for (int t = 0; t < types; ++t) {
                           buf.add(lay.z_at(h, t, v),
                                   -prob *
                                       leaf_payoff(inst, tree.state[child], t));
                         }
                       } else {
                         buf.add(lay.ell_at(child), -1.0);
                       }
                     });
      if (current >= 0) buf.flush(&p, rows[current]);
    }
    for (int t = 0; t < types; ++t) {
      const double rhs = h == 0 ? inst.prior[t] * prior_scale : 0.0;
      const int row = p.add_constraint("f" + hs + "_" + std::to_string(t),
                                       lp::Relation::kEq, rhs);
      if (leaf) {
        buf.add(lay.z_leaf_at(h, t), 1.0);
      } else {
        for (int v = 0; v < types; ++v) buf.add(lay.z_at(h, t, v), 1.0);
      }
      if (h != 0) {
        const HistoryId par = tree.parent[h];
        buf.add(lay.z_at(par, t, tree.in_alloc[h]), -tree.in_prob[h]);
      }
      buf.flush(&p, row);
    }
  }
  p.seal();
  return p;
}

lp::LPProblem build_attacker_impl(const GameTree& tree,
                                  const DragInstance& inst, double prior_scale,
                                  bool reduce) {
  const LpLayout lay = layout_of(tree, inst, reduce);
  const int types = lay.types;
  lp::LPProblem p;
  p.set_objective_sense(lp::Sense::kMinimize);

  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    if (lay.skipped[h]) continue;
    const std::string hs = std::to_string(h);
    const bool leaf = tree.is_leaf(h);
    if (leaf) {
      p.add_variable("e" + hs, 0.0, lp::kInf);
    } else {
      for (int u = 0; u < lay.nact[h]; ++u) {
        p.add_variable("e" + hs + "_" + std::to_string(u), 0.0, lp::kInf);
      }
    }
    for (int t = 0; t < types; ++t) {
      p.add_variable("q" + hs + "_" + std::to_string(t), -lp::kInf, lp::kInf,
                     h == 0 ? inst.prior[t] * prior_scale : 0.0);
    }
  }

  RowBuffer buf(p.num_variables());
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    if (lay.skipped[h]) continue;
    const std::string hs = std::to_string(h);
    const bool leaf = tree.is_leaf(h);
    if (leaf) {
      for (int t = 0; t < types; ++t) {
        const int row = p.add_constraint("y" + hs + "_" + std::to_string(t),
                                         lp::Relation::kGe, 0.0);
        buf.add(lay.q_at(h, t, true), 1.0);
        buf.add(lay.eta_at(h, 0), -leaf_payoff(inst, tree.state[h], t));
        buf.flush(&p, row);
      }
    } else {
      // Value rows indexed (type, allocation); gather child terms first.
      std::vector<std::vector<std::pair<int64_t, double>>> extra(
          static_cast<size_t>(types) * types);
      for_each_child(tree, inst, h,
                     [&](HistoryId child, int u, int v, int edge, double prob) {
                       (void)edge;
                       for (int t = 0; t < types; ++t) {
                         auto& bucket = extra[static_cast<size_t>(t) * types + v];
                         if (lay.skipped[child]) {
                           bucket.emplace_back(
                               lay.eta_at(h, u),
                               -prob *
                                   leaf_payoff(inst, tree.state[child], t));
                         } else {
                           bucket.emplace_back(lay.q_at(child, t, tree.is_leaf(child)),
                                               -prob);
                         }
                       }
                     });
      const std::vector<int>& actions = action_space(inst, tree.state[h]);
      for (int t = 0; t < types; ++t) {
        for (int v = 0; v < types; ++v) {
          const int row = p.add_constraint(
              "y" + hs + "_" + std::to_string(t) + "_" + std::to_string(v),
              lp::Relation::kGe, 0.0);
          buf.add(lay.q_at(h, t, false), 1.0);
          for (int u = 0; u < lay.nact[h]; ++u) {
            buf.add(lay.eta_at(h, u), -stage_reward(inst, actions[u], v, t));
          }
          for (const auto& [col, coef] :
               extra[static_cast<size_t>(t) * types + v]) {
            buf.add(col, coef);
          }
          buf.flush(&p, row);
        }
      }
    }
    const double rhs = h == 0 ? 1.0 : 0.0;
    const int row = p.add_constraint("g" + hs, lp::Relation::kEq, rhs);
    if (leaf) {
      buf.add(lay.eta_at(h, 0), 1.0);
    } else {
      for (int u = 0; u < lay.nact[h]; ++u) buf.add(lay.eta_at(h, u), 1.0);
    }
    if (h != 0) {
      const HistoryId par = tree.parent[h];
      const std::vector<int>& pacts = action_space(inst, tree.state[par]);
      int u_in = -1;
      for (int u = 0; u < static_cast<int>(pacts.size()); ++u) {
        if (pacts[u] == tree.in_edge[h]) u_in = u;
      }
      buf.add(lay.eta_at(par, u_in), -1.0);
    }
    buf.flush(&p, row);
  }
  p.seal();
  return p;
}

// Plan skeletons matching the full (unreduced) layout.
DefenderPlan empty_defender_plan(const GameTree& tree, int types) {
  DefenderPlan plan;
  plan.z_begin.assign(tree.num_histories + 1, 0);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    const int64_t width = tree.is_leaf(h)
                              ? types
                              : static_cast<int64_t>(types) * types;
    plan.z_begin[h + 1] = plan.z_begin[h] + width;
  }
  plan.z.assign(plan.z_begin.back(), 0.0);
  plan.ell.assign(tree.num_histories, 0.0);
  return plan;
}

AttackerPlan empty_attacker_plan(const GameTree& tree,
                                 const DragInstance& inst) {
  AttackerPlan plan;
  plan.eta_begin.assign(tree.num_histories + 1, 0);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    const int64_t width =
        tree.is_leaf(h) ? 1 : num_attacker_actions(tree, inst, h);
    plan.eta_begin[h + 1] = plan.eta_begin[h] + width;
  }
  plan.eta.assign(plan.eta_begin.back(), 0.0);
  plan.q.assign(static_cast<int64_t>(tree.num_histories) *
                    static_cast<int64_t>(inst.assets.size()),
                0.0);
  return plan;
}

// Structural starting bases for the solver. The value bound of each history
// pairs with its first value row and the first-allocation (first-action) z
// (eta) chain with the flow rows; under a leaves-first ordering of the value
// part and a root-first ordering of the flow part both blocks are unit
// triangular, so the hinted basis is always nonsingular and every flow row
// starts exactly satisfied.
std::vector<int> defender_basis_hint(const GameTree& tree, const LpLayout& lay) {
  std::vector<int> hint(lay.drow.back(), -1);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    if (lay.skipped[h]) continue;
    const bool leaf = tree.is_leaf(h);
    hint[leaf ? lay.drow[h] : lay.dvalue_row(h, 0)] =
        static_cast<int>(lay.ell_at(h));
    for (int t = 0; t < lay.types; ++t) {
      hint[lay.dflow_row(h, t, leaf)] = static_cast<int>(
          leaf ? lay.z_leaf_at(h, t) : lay.z_at(h, t, 0));
    }
  }
  return hint;
}

std::vector<int> attacker_basis_hint(const GameTree& tree,
                                     const LpLayout& lay) {
  std::vector<int> hint(lay.arow.back(), -1);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    if (lay.skipped[h]) continue;
    const bool leaf = tree.is_leaf(h);
    for (int t = 0; t < lay.types; ++t) {
      hint[lay.avalue_row(h, t, 0, leaf)] =
          static_cast<int>(lay.q_at(h, t, leaf));
    }
    hint[lay.aflow_row(h)] = static_cast<int>(lay.eta_at(h, 0));
  }
  return hint;
}

int action_index_of(const DragInstance& inst, const GameTree& tree,
                    HistoryId child) {
  const HistoryId par = tree.parent[child];
  const std::vector<int>& actions = action_space(inst, tree.state[par]);
  for (int u = 0; u < static_cast<int>(actions.size()); ++u) {
    if (actions[u] == tree.in_edge[child]) return u;
  }
  throw DragError(ErrorCode::kBadHistory, "child edge not in parent actions");
}

}  // namespace

lp::LPProblem build_defender_lp(const GameTree& tree,
                                const DragInstance& instance,
                                double prior_scale) {
  return build_defender_impl(tree, instance, prior_scale, false);
}

lp::LPProblem build_attacker_lp(const GameTree& tree,
                                const DragInstance& instance,
                                double prior_scale) {
  return build_attacker_impl(tree, instance, prior_scale, false);
}

DefenderPlan defender_plan_from_lp(const GameTree& tree,
                                   const DragInstance& instance,
                                   const std::vector<double>& primal) {
  const LpLayout lay = layout_of(tree, instance, false);
  if (static_cast<int64_t>(primal.size()) != lay.dvar.back()) {
    throw DragError(ErrorCode::kInvalidPlan,
                    "defender primal length does not match the tree");
  }
  DefenderPlan plan = empty_defender_plan(tree, lay.types);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    const int width = plan.block_size(h);
    for (int k = 0; k < width; ++k) {
      plan.z[plan.z_begin[h] + k] = primal[lay.dvar[h] + k];
    }
    plan.ell[h] = primal[lay.ell_at(h)];
  }
  return plan;
}

AttackerPlan attacker_plan_from_lp(const GameTree& tree,
                                   const DragInstance& instance,
                                   const std::vector<double>& primal) {
  const LpLayout lay = layout_of(tree, instance, false);
  if (static_cast<int64_t>(primal.size()) != lay.avar.back()) {
    throw DragError(ErrorCode::kInvalidPlan,
                    "attacker primal length does not match the tree");
  }
  AttackerPlan plan = empty_attacker_plan(tree, instance);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    const bool leaf = tree.is_leaf(h);
    const int width = plan.block_size(h);
    for (int k = 0; k < width; ++k) {
      plan.eta[plan.eta_begin[h] + k] = primal[lay.eta_at(h, k)];
    }
    for (int t = 0; t < lay.types; ++t) {
      plan.q[static_cast<int64_t>(h) * lay.types + t] =
          primal[lay.q_at(h, t, leaf)];
    }
  }
  return plan;
}

AttackerPlan attacker_plan_from_defender_duals(
    const GameTree& tree, const DragInstance& instance,
    const std::vector<double>& dual) {
  const LpLayout lay = layout_of(tree, instance, false);
  if (static_cast<int64_t>(dual.size()) != lay.drow.back()) {
    throw DragError(ErrorCode::kInvalidPlan,
                    "defender dual length does not match the tree");
  }
  AttackerPlan plan = empty_attacker_plan(tree, instance);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    const bool leaf = tree.is_leaf(h);
    const int width = plan.block_size(h);
    for (int k = 0; k < width; ++k) {
      // Duals of the value rows are the action weights. Optimal bases can
      // leave sign noise up to the solver tolerance; snap that to zero so
      // the result is a valid plan, but keep real violations visible.
      double e = dual[lay.dvalue_row(h, k)];
      if (e < 0.0 && e > -1e-8) e = 0.0;
      plan.eta[plan.eta_begin[h] + k] = e;
    }
    for (int t = 0; t < lay.types; ++t) {
      plan.q[static_cast<int64_t>(h) * lay.types + t] =
          dual[lay.dflow_row(h, t, leaf)];
    }
  }
  return plan;
}

const double* DefenderStrategy::row(HistoryId h, int theta) const {
  return tau.data() + tau_begin[h] +
         static_cast<int64_t>(theta) * num_assets;
}

DefenderStrategy recover_defender_policy(const GameTree& tree,
                                         const DragInstance& instance,
                                         const DefenderPlan& plan) {
  const int types = static_cast<int>(instance.assets.size());
  if (plan.z_begin.size() != static_cast<size_t>(tree.num_histories) + 1) {
    throw DragError(ErrorCode::kInvalidPlan, "plan does not match the tree");
  }
  for (double v : plan.z) {
    if (v < kMassFloor) {
      throw DragError(ErrorCode::kInvalidPlan,
                      "negative mass in defender plan");
    }
  }
  double scale = 0.0;
  for (int k = 0; k < plan.block_size(0); ++k) scale += plan.block(0)[k];
  const double tol = kFlowTol * (1.0 + scale);

  std::vector<double> rowsum(static_cast<int64_t>(tree.num_histories) * types,
                             0.0);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    const bool leaf = tree.is_leaf(h);
    for (int t = 0; t < types; ++t) {
      double total = 0.0;
      if (leaf) {
        total = plan.block(h)[t];
      } else {
        for (int v = 0; v < types; ++v) {
          total += plan.block(h)[static_cast<int64_t>(t) * types + v];
        }
      }
      rowsum[static_cast<int64_t>(h) * types + t] = total;
      double expected;
      if (h == 0) {
        expected = instance.prior[t] * scale;
      } else {
        const HistoryId par = tree.parent[h];
        expected = tree.in_prob[h] *
                   plan.block(par)[static_cast<int64_t>(t) * types +
                                   tree.in_alloc[h]];
      }
      if (std::fabs(total - expected) > tol) {
        throw DragError(ErrorCode::kInvalidPlan,
                        "defender plan violates flow at history " +
                            std::to_string(h));
      }
    }
  }

  DefenderStrategy strat;
  strat.num_assets = types;
  strat.tau_begin.assign(tree.num_histories + 1, 0);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    const int64_t width =
        tree.is_leaf(h) ? 0 : static_cast<int64_t>(types) * types;
    strat.tau_begin[h + 1] = strat.tau_begin[h] + width;
  }
  strat.tau.assign(strat.tau_begin.back(), 0.0);
  const double zero_tol = 1e-12 * (1.0 + scale);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    if (tree.is_leaf(h)) continue;
    for (int t = 0; t < types; ++t) {
      const double total = rowsum[static_cast<int64_t>(h) * types + t];
      double* out = strat.tau.data() + strat.tau_begin[h] +
                    static_cast<int64_t>(t) * types;
      for (int v = 0; v < types; ++v) {
        const double mass =
            plan.block(h)[static_cast<int64_t>(t) * types + v];
        out[v] = total > zero_tol ? std::max(mass, 0.0) / total
                                  : 1.0 / types;
      }
    }
  }
  return strat;
}

AttackerStrategy recover_attacker_policy(const GameTree& tree,
                                         const DragInstance& instance,
                                         const AttackerPlan& plan) {
  if (plan.eta_begin.size() != static_cast<size_t>(tree.num_histories) + 1) {
    throw DragError(ErrorCode::kInvalidPlan, "plan does not match the tree");
  }
  for (double v : plan.eta) {
    if (v < kMassFloor) {
      throw DragError(ErrorCode::kInvalidPlan,
                      "negative mass in attacker plan");
    }
  }
  double scale = 0.0;
  for (int k = 0; k < plan.block_size(0); ++k) scale += plan.block(0)[k];
  const double tol = kFlowTol * (1.0 + scale);
  for (HistoryId h = 1; h < tree.num_histories; ++h) {
    double total = 0.0;
    for (int k = 0; k < plan.block_size(h); ++k) total += plan.block(h)[k];
    const int u_in = action_index_of(instance, tree, h);
    const double expected = plan.block(tree.parent[h])[u_in];
    if (std::fabs(total - expected) > tol) {
      throw DragError(ErrorCode::kInvalidPlan,
                      "attacker plan violates flow at history " +
                          std::to_string(h));
    }
  }

  AttackerStrategy strat;
  strat.sigma_begin.assign(tree.num_histories + 1, 0);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    const int64_t width =
        tree.is_leaf(h) ? 0 : num_attacker_actions(tree, instance, h);
    strat.sigma_begin[h + 1] = strat.sigma_begin[h] + width;
  }
  strat.sigma.assign(strat.sigma_begin.back(), 0.0);
  const double zero_tol = 1e-12 * (1.0 + scale);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    if (tree.is_leaf(h)) continue;
    const int width = plan.block_size(h);
    double total = 0.0;
    for (int k = 0; k < width; ++k) total += plan.block(h)[k];
    double* out = strat.sigma.data() + strat.sigma_begin[h];
    for (int k = 0; k < width; ++k) {
      out[k] = total > zero_tol ? std::max(plan.block(h)[k], 0.0) / total
                                : 1.0 / width;
    }
  }
  return strat;
}

DefenderPlan defender_plan_from_strategy(const GameTree& tree,
                                         const DragInstance& instance,
                                         const DefenderStrategy& strategy) {
  const int types = static_cast<int>(instance.assets.size());
  DefenderPlan plan = empty_defender_plan(tree, types);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    std::vector<double> reach(types);  // Type mass arriving at h.
    if (h == 0) {
      for (int t = 0; t < types; ++t) reach[t] = instance.prior[t];
    } else {
      const HistoryId par = tree.parent[h];
      for (int t = 0; t < types; ++t) {
        reach[t] = tree.in_prob[h] *
                   plan.block(par)[static_cast<int64_t>(t) * types +
                                   tree.in_alloc[h]];
      }
    }
    if (tree.is_leaf(h)) {
      for (int t = 0; t < types; ++t) plan.block(h)[t] = reach[t];
    } else {
      for (int t = 0; t < types; ++t) {
        const double* row = strategy.row(h, t);
        for (int v = 0; v < types; ++v) {
          plan.block(h)[static_cast<int64_t>(t) * types + v] =
              reach[t] * row[v];
        }
      }
    }
  }
  return plan;
}

AttackerPlan attacker_plan_from_strategy(const GameTree& tree,
                                         const DragInstance& instance,
                                         const AttackerStrategy& strategy) {
  AttackerPlan plan = empty_attacker_plan(tree, instance);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    double reach = 1.0;
    if (h != 0) {
      const int u_in = action_index_of(instance, tree, h);
      reach = plan.block(tree.parent[h])[u_in];
    }
    if (tree.is_leaf(h)) {
      plan.block(h)[0] = reach;
    } else {
      const double* row = strategy.row(h);
      for (int k = 0; k < plan.block_size(h); ++k) {
        plan.block(h)[k] = reach * row[k];
      }
    }
  }
  return plan;
}

BeliefUpdateResult belief_update(
    const Belief& b, const std::vector<std::vector<double>>& tau_rows,
    int observed_alloc, double zero_tol) {
  BeliefUpdateResult out;
  const size_t types = b.size();
  if (tau_rows.size() != types) {
    throw DragError(ErrorCode::kInvalidPlan,
                    "belief and conditional sizes disagree");
  }
  out.posterior.resize(types);
  double total = 0.0;
  for (size_t t = 0; t < types; ++t) {
    out.posterior[t] = b[t] * tau_rows[t][observed_alloc];
    total += out.posterior[t];
  }
  out.normalizer = total;
  if (total <= zero_tol) {
    out.off_path = true;
    out.posterior = b;
    return out;
  }
  for (size_t t = 0; t < types; ++t) out.posterior[t] /= total;
  return out;
}

BeliefTrajectory belief_trajectory(const GameTree& tree,
                                   const DragInstance& instance,
                                   const DefenderStrategy& strategy,
                                   HistoryId h) {
  std::vector<HistoryId> chain;
  for (HistoryId cur = h; cur != kNoHistory; cur = tree.parent[cur]) {
    chain.push_back(cur);
  }
  std::reverse(chain.begin(), chain.end());

  const int types = static_cast<int>(instance.assets.size());
  BeliefTrajectory out;
  out.beliefs.push_back(instance.prior);
  out.off_path.push_back(0);
  for (size_t i = 1; i < chain.size(); ++i) {
    const HistoryId par = chain[i - 1];
    std::vector<std::vector<double>> rows(types);
    for (int t = 0; t < types; ++t) {
      const double* r = strategy.row(par, t);
      rows[t].assign(r, r + types);
    }
    BeliefUpdateResult step =
        belief_update(out.beliefs.back(), rows, tree.in_alloc[chain[i]]);
    out.beliefs.push_back(step.posterior);
    out.off_path.push_back(step.off_path ||
                           out.off_path.back());
  }
  return out;
}

BeliefMap belief_map_from_plan(const GameTree& tree,
                               const DragInstance& instance,
                               const DefenderPlan& plan, double zero_tol) {
  const int types = static_cast<int>(instance.assets.size());
  BeliefMap map;
  map.belief.assign(static_cast<int64_t>(tree.num_histories) * types, 0.0);
  map.off_path.assign(tree.num_histories, 0);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    std::vector<double> mass(types, 0.0);
    const bool leaf = tree.is_leaf(h);
    for (int t = 0; t < types; ++t) {
      if (leaf) {
        mass[t] = plan.block(h)[t];
      } else {
        for (int v = 0; v < types; ++v) {
          mass[t] += plan.block(h)[static_cast<int64_t>(t) * types + v];
        }
      }
    }
    double total = 0.0;
    for (double v : mass) total += std::max(v, 0.0);
    double* out = map.belief.data() + static_cast<int64_t>(h) * types;
    if (total > zero_tol) {
      for (int t = 0; t < types; ++t) out[t] = std::max(mass[t], 0.0) / total;
    } else if (h == 0) {
      map.off_path[h] = 1;
      for (int t = 0; t < types; ++t) out[t] = instance.prior[t];
    } else {
      map.off_path[h] = 1;
      const double* parent =
          map.belief.data() + static_cast<int64_t>(tree.parent[h]) * types;
      for (int t = 0; t < types; ++t) out[t] = parent[t];
    }
  }
  return map;
}

EquilibriumSolution solve_pbne(const DragInstance& instance,
                               const PbneOptions& options) {
  const GameTree tree = build_tree(instance, options.size_cap);
  return solve_pbne(instance, tree, options);
}

EquilibriumSolution solve_pbne(const DragInstance& instance,
                               const GameTree& tree,
                               const PbneOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const int types = static_cast<int>(instance.assets.size());
  const bool reduce = options.presolve && tree.num_histories > 1;

  lp::LPProblem defender = build_defender_impl(tree, instance, 1.0, reduce);
  lp::LPProblem attacker = build_attacker_impl(tree, instance, 1.0, reduce);
  const LpLayout lay = layout_of(tree, instance, reduce);
  lp::SolveOptions dopts = options.lp;
  dopts.basis_hint = defender_basis_hint(tree, lay);
  lp::LPSolution dsol = lp::solve_lp(defender, dopts);
  if (dsol.status != lp::Status::kOptimal) {
    throw DragError(ErrorCode::kSolverFailure,
                    "defender program did not reach optimality");
  }
  lp::SolveOptions aopts = options.lp;
  aopts.basis_hint = attacker_basis_hint(tree, lay);
  lp::LPSolution asol = lp::solve_lp(attacker, aopts);
  if (asol.status != lp::Status::kOptimal) {
    throw DragError(ErrorCode::kSolverFailure,
                    "attacker program did not reach optimality");
  }
  const double gap = std::fabs(dsol.objective - asol.objective);
  if (gap > options.gap_tol * std::max(1.0, std::fabs(dsol.objective))) {
    throw DragError(ErrorCode::kSolverFailure,
                    "equilibrium programs disagree: defender " +
                        std::to_string(dsol.objective) + ", attacker " +
                        std::to_string(asol.objective));
  }

  EquilibriumSolution sol;
  sol.game_value = dsol.objective;
  sol.duality_gap = gap;

  if (!reduce) {
    sol.defender_plan = defender_plan_from_lp(tree, instance, dsol.primal);
    sol.attacker_plan = attacker_plan_from_lp(tree, instance, asol.primal);
  } else {
    // Expand the reduced primals back onto the full layout; eliminated
    // leaves take their values from the flow and value identities.
    sol.defender_plan = empty_defender_plan(tree, types);
    sol.attacker_plan = empty_attacker_plan(tree, instance);
    for (HistoryId h = 0; h < tree.num_histories; ++h) {
      if (lay.skipped[h]) {
        const HistoryId par = tree.parent[h];
        double ell = 0.0;
        for (int t = 0; t < types; ++t) {
          const double z =
              tree.in_prob[h] *
              sol.defender_plan
                  .block(par)[static_cast<int64_t>(t) * types +
                              tree.in_alloc[h]];
          sol.defender_plan.block(h)[t] = z;
          ell += z * leaf_payoff(instance, tree.state[h], t);
        }
        sol.defender_plan.ell[h] = ell;
        const int u_in = action_index_of(instance, tree, h);
        const double eta = sol.attacker_plan.block(par)[u_in];
        sol.attacker_plan.block(h)[0] = eta;
        for (int t = 0; t < types; ++t) {
          sol.attacker_plan.q[static_cast<int64_t>(h) * types + t] =
              eta * leaf_payoff(instance, tree.state[h], t);
        }
        continue;
      }
      const bool leaf = tree.is_leaf(h);
      const int width = sol.defender_plan.block_size(h);
      for (int k = 0; k < width; ++k) {
        sol.defender_plan.z[sol.defender_plan.z_begin[h] + k] =
            dsol.primal[lay.dvar[h] + k];
      }
      sol.defender_plan.ell[h] = dsol.primal[lay.ell_at(h)];
      const int awidth = sol.attacker_plan.block_size(h);
      for (int k = 0; k < awidth; ++k) {
        sol.attacker_plan.eta[sol.attacker_plan.eta_begin[h] + k] =
            asol.primal[lay.eta_at(h, k)];
      }
      for (int t = 0; t < types; ++t) {
        sol.attacker_plan.q[static_cast<int64_t>(h) * types + t] =
            asol.primal[lay.q_at(h, t, leaf)];
      }
    }
  }

  sol.defender_strategy =
      recover_defender_policy(tree, instance, sol.defender_plan);
  sol.attacker_strategy =
      recover_attacker_policy(tree, instance, sol.attacker_plan);
  sol.beliefs = belief_map_from_plan(tree, instance, sol.defender_plan);

  sol.stats.defender = dsol.stats;
  sol.stats.attacker = asol.stats;
  sol.stats.num_histories = tree.num_histories;
  sol.stats.defender_variables = defender.num_variables();
  sol.stats.defender_constraints = defender.num_constraints();
  sol.stats.attacker_variables = attacker.num_variables();
  sol.stats.attacker_constraints = attacker.num_constraints();
  sol.stats.presolved = reduce;
  sol.stats.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return sol;
}

std::string solution_to_json(const GameTree& tree,
                             const DragInstance& instance,
                             const EquilibriumSolution& solution,
                             bool with_plans) {
  const int types = static_cast<int>(instance.assets.size());
  json root;
  root["game_value"] = solution.game_value;
  root["duality_gap"] = solution.duality_gap;
  root["num_histories"] = tree.num_histories;

  json dstrat = json::array();
  json astrat = json::array();
  json beliefs = json::array();
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    const std::string key = encode_history(history_of(tree, instance, h));
    if (!tree.is_leaf(h)) {
      json rows = json::array();
      for (int t = 0; t < types; ++t) {
        const double* r = solution.defender_strategy.row(h, t);
        rows.push_back(std::vector<double>(r, r + types));
      }
      dstrat.push_back({{"history", key}, {"tau", rows}});
      const double* s = solution.attacker_strategy.row(h);
      astrat.push_back(
          {{"history", key},
           {"sigma", std::vector<double>(
                         s, s + solution.attacker_strategy.row_size(h))}});
    }
    const double* b =
        solution.beliefs.belief.data() + static_cast<int64_t>(h) * types;
    beliefs.push_back({{"history", key},
                       {"belief", std::vector<double>(b, b + types)},
                       {"off_path", solution.beliefs.off_path[h] != 0}});
  }
  root["defender_strategy"] = std::move(dstrat);
  root["attacker_strategy"] = std::move(astrat);
  root["beliefs"] = std::move(beliefs);

  if (with_plans) {
    root["plans"] = {{"defender_z", solution.defender_plan.z},
                     {"defender_ell", solution.defender_plan.ell},
                     {"attacker_eta", solution.attacker_plan.eta},
                     {"attacker_q", solution.attacker_plan.q}};
  }
  return root.dump(2);
}

LoadedSolution solution_from_json(const GameTree& tree,
                                  const DragInstance& instance,
                                  const std::string& json_text) {
  const int types = static_cast<int>(instance.assets.size());
  try {
    const json root = json::parse(json_text);
    LoadedSolution out;
    out.game_value = root.at("game_value").get<double>();
    out.duality_gap = root.at("duality_gap").get<double>();

    out.defender_strategy.num_assets = types;
    out.defender_strategy.tau_begin.assign(tree.num_histories + 1, 0);
    out.attacker_strategy.sigma_begin.assign(tree.num_histories + 1, 0);
    for (HistoryId h = 0; h < tree.num_histories; ++h) {
      const bool leaf = tree.is_leaf(h);
      out.defender_strategy.tau_begin[h + 1] =
          out.defender_strategy.tau_begin[h] +
          (leaf ? 0 : static_cast<int64_t>(types) * types);
      out.attacker_strategy.sigma_begin[h + 1] =
          out.attacker_strategy.sigma_begin[h] +
          (leaf ? 0 : num_attacker_actions(tree, instance, h));
    }
    out.defender_strategy.tau.assign(out.defender_strategy.tau_begin.back(),
                                     0.0);
    out.attacker_strategy.sigma.assign(
        out.attacker_strategy.sigma_begin.back(), 0.0);

    int64_t interior_count = 0;
    for (HistoryId h = 0; h < tree.num_histories; ++h) {
      interior_count += tree.is_leaf(h) ? 0 : 1;
    }
    const json& dstrat = root.at("defender_strategy");
    if (static_cast<int64_t>(dstrat.size()) != interior_count) {
      throw DragError(ErrorCode::kParseError,
                      "defender strategy does not cover the tree");
    }
    for (const json& entry : dstrat) {
      const HistoryId h = find_history(
          tree, instance, entry.at("history").get<std::string>());
      if (h == kNoHistory || tree.is_leaf(h)) {
        throw DragError(ErrorCode::kParseError,
                        "unknown interior history in defender strategy");
      }
      const json& rows = entry.at("tau");
      if (static_cast<int>(rows.size()) != types) {
        throw DragError(ErrorCode::kParseError, "bad tau row count");
      }
      for (int t = 0; t < types; ++t) {
        const auto row = rows[t].get<std::vector<double>>();
        if (static_cast<int>(row.size()) != types) {
          throw DragError(ErrorCode::kParseError, "bad tau row width");
        }
        std::copy(row.begin(), row.end(),
                  out.defender_strategy.tau.begin() +
                      out.defender_strategy.tau_begin[h] +
                      static_cast<int64_t>(t) * types);
      }
    }
    const json& astrat = root.at("attacker_strategy");
    if (static_cast<int64_t>(astrat.size()) != interior_count) {
      throw DragError(ErrorCode::kParseError,
                      "attacker strategy does not cover the tree");
    }
    for (const json& entry : astrat) {
      const HistoryId h = find_history(
          tree, instance, entry.at("history").get<std::string>());
      if (h == kNoHistory || tree.is_leaf(h)) {
        throw DragError(ErrorCode::kParseError,
                        "unknown interior history in attacker strategy");
      }
      const auto row = entry.at("sigma").get<std::vector<double>>();
      const int64_t width = out.attacker_strategy.sigma_begin[h + 1] -
                            out.attacker_strategy.sigma_begin[h];
      if (static_cast<int64_t>(row.size()) != width) {
        throw DragError(ErrorCode::kParseError, "bad sigma width");
      }
      std::copy(row.begin(), row.end(),
                out.attacker_strategy.sigma.begin() +
                    out.attacker_strategy.sigma_begin[h]);
    }

    out.beliefs.belief.assign(
        static_cast<int64_t>(tree.num_histories) * types, 0.0);
    out.beliefs.off_path.assign(tree.num_histories, 0);
    const json& beliefs = root.at("beliefs");
    if (static_cast<int64_t>(beliefs.size()) != tree.num_histories) {
      throw DragError(ErrorCode::kParseError,
                      "belief list does not cover the tree");
    }
    for (const json& entry : beliefs) {
      const HistoryId h = find_history(
          tree, instance, entry.at("history").get<std::string>());
      if (h == kNoHistory) {
        throw DragError(ErrorCode::kParseError, "unknown history in beliefs");
      }
      const auto b = entry.at("belief").get<std::vector<double>>();
      if (static_cast<int>(b.size()) != types) {
        throw DragError(ErrorCode::kParseError, "bad belief width");
      }
      std::copy(b.begin(), b.end(),
                out.beliefs.belief.begin() + static_cast<int64_t>(h) * types);
      out.beliefs.off_path[h] = entry.at("off_path").get<bool>() ? 1 : 0;
    }

    if (root.contains("plans")) {
      out.has_plans = true;
      const json& plans = root.at("plans");
      out.defender_plan = empty_defender_plan(tree, types);
      out.attacker_plan = empty_attacker_plan(tree, instance);
      const auto z = plans.at("defender_z").get<std::vector<double>>();
      const auto ell = plans.at("defender_ell").get<std::vector<double>>();
      const auto eta = plans.at("attacker_eta").get<std::vector<double>>();
      const auto q = plans.at("attacker_q").get<std::vector<double>>();
      if (z.size() != out.defender_plan.z.size() ||
          ell.size() != out.defender_plan.ell.size() ||
          eta.size() != out.attacker_plan.eta.size() ||
          q.size() != out.attacker_plan.q.size()) {
        throw DragError(ErrorCode::kParseError, "plan arrays have bad sizes");
      }
      out.defender_plan.z = z;
      out.defender_plan.ell = ell;
      out.attacker_plan.eta = eta;
      out.attacker_plan.q = q;
    }
    return out;
  } catch (const json::exception& err) {
    throw DragError(ErrorCode::kParseError,
                    std::string("solution json: ") + err.what());
  }
}

}  // namespace drag::pbne
