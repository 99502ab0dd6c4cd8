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

#ifndef DRAG_SRC_EVAL_INTERNAL_H_
#define DRAG_SRC_EVAL_INTERNAL_H_

#include "drag/game_model.h"
#include "drag/game_tree.h"

namespace drag::eval::internal {

// Per-stage reward on the pruned tree. Interior histories never contain an
// asset, so the paper-default prefix condition is already satisfied and the
// reward reduces to the matching-allocation edge weight.
inline double stage_reward(const DragInstance& inst, int edge_index, int alloc,
                           int theta) {
  if (inst.reward_mode == RewardMode::kCustomTable) {
    auto it = inst.reward_table.find({theta, edge_index, alloc});
    return it == inst.reward_table.end() ? 0.0 : it->second;
  }
  return alloc == theta ? inst.graph.edges[edge_index].weight : 0.0;
}

inline double leaf_payoff(const DragInstance& inst, int state, int theta) {
  return state == inst.assets[theta] ? -inst.threat_level : 0.0;
}

}  // namespace drag::eval::internal

#endif  // DRAG_SRC_EVAL_INTERNAL_H_
