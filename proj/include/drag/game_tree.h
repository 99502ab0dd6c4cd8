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

#ifndef DRAG_GAME_TREE_H_
#define DRAG_GAME_TREE_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "drag/game_model.h"

namespace drag {

using HistoryId = int32_t;
inline constexpr HistoryId kNoHistory = -1;

inline constexpr int64_t kDefaultSizeCap = 5000000;

// Explicit history tree of an instance. Ids are dense and assigned in
// breadth-first stage-major order (all stage-t histories precede all
// stage-t+1 histories); this ordering is frozen because LP variable order,
// golden files, and solution files all key off it.
//
// Children of a non-leaf history are grouped by the label triple
// (u, v, s'): attacker edges in action_space order, allocations in asset
// order, successors in declared transition-row order. child_begin[h] ..
// child_begin[h+1] spans the group in exactly that lexicographic order.
struct GameTree {
  int num_histories = 0;
  int num_assets = 0;
  std::vector<int32_t> stage;
  std::vector<int32_t> state;
  std::vector<HistoryId> parent;       // kNoHistory at the root.
  std::vector<int32_t> in_edge;        // Edge index of u_{t-1}; -1 at root.
  std::vector<int32_t> in_alloc;       // v_{t-1}; -1 at root.
  std::vector<double> in_prob;         // P(s_t | s_{t-1}, u_{t-1}); 1 at root.
  std::vector<uint8_t> leaf;
  std::vector<int64_t> child_begin;    // Size num_histories + 1.
  std::vector<HistoryId> child_id;
  std::vector<int32_t> stage_begin;    // Id range per stage; size T + 2.

  bool is_leaf(HistoryId h) const { return leaf[h] != 0; }
  int num_children(HistoryId h) const {
    return static_cast<int>(child_begin[h + 1] - child_begin[h]);
  }
};

// Builds the full pruned tree: expansion stops at terminal histories (asset
// arrival or stage T), so no history contains an asset strictly before its
// last state. Throws DragError(kSizeCapExceeded) reporting the stage reached
// and the partial count if the history count would exceed size_cap.
GameTree build_tree(const DragInstance& instance,
                    int64_t size_cap = kDefaultSizeCap);

// Number of attacker actions at h: out-degree of its state for interior
// histories. Leaves have no action pair.
int num_attacker_actions(const GameTree& tree, const DragInstance& instance,
                         HistoryId h);

// Child lookup by label indices (attacker action position a, allocation v,
// successor position k within the transition row). Bounds-checked.
HistoryId child_at(const GameTree& tree, const DragInstance& instance,
                   HistoryId h, int a, int v, int k);

// Reconstructs the standalone history record by walking parent links.
History history_of(const GameTree& tree, const DragInstance& instance,
                   HistoryId h);

// Id of the history encoded by `text`, or kNoHistory if that play prefix is
// not a node of the tree.
HistoryId find_history(const GameTree& tree, const DragInstance& instance,
                       const std::string& text);

// Debugging aid: one JSON object per line with id, parent, label, stage,
// state, and leaf flag.
void dump_tree(const GameTree& tree, const DragInstance& instance,
               std::ostream& out);

}  // namespace drag

#endif  // DRAG_GAME_TREE_H_
