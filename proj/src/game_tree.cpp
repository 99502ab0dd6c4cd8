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

#include "drag/game_tree.h"

#include <algorithm>
#include <ostream>
#include <string>

namespace drag {

namespace {

bool node_is_asset(const DragInstance& instance, int s) {
  return std::find(instance.assets.begin(), instance.assets.end(), s) !=
         instance.assets.end();
}

}  // namespace

GameTree build_tree(const DragInstance& instance, int64_t size_cap) {
  GameTree tree;
  tree.num_assets = static_cast<int>(instance.assets.size());
  const int num_types = tree.num_assets;

  tree.stage.push_back(0);
  tree.state.push_back(instance.s0);
  tree.parent.push_back(kNoHistory);
  tree.in_edge.push_back(-1);
  tree.in_alloc.push_back(-1);
  tree.in_prob.push_back(1.0);
  const bool root_leaf =
      node_is_asset(instance, instance.s0) || instance.horizon == 0;
  tree.leaf.push_back(root_leaf ? 1 : 0);
  tree.stage_begin = {0, 1};

  int64_t count = 1;
  int32_t frontier_begin = 0;
  int32_t frontier_end = 1;
  for (int t = 0; t < instance.horizon && frontier_begin < frontier_end; ++t) {
    for (int32_t h = frontier_begin; h < frontier_end; ++h) {
      if (tree.leaf[h]) continue;
      const int s = tree.state[h];
      for (int e : action_space(instance, s)) {
        const auto succ = successor_distribution(instance, e);
        for (int v = 0; v < num_types; ++v) {
          for (const auto& [sp, p] : succ) {
            if (++count > size_cap) {
              throw DragError(
                  ErrorCode::kSizeCapExceeded,
                  "history tree exceeds the size cap of " +
                      std::to_string(size_cap) + " at stage " +
                      std::to_string(t + 1) + " (partial count " +
                      std::to_string(count - 1) + ")");
            }
            tree.stage.push_back(t + 1);
            tree.state.push_back(sp);
            tree.parent.push_back(h);
            tree.in_edge.push_back(e);
            tree.in_alloc.push_back(v);
            tree.in_prob.push_back(p);
            const bool leaf =
                node_is_asset(instance, sp) || t + 1 == instance.horizon;
            tree.leaf.push_back(leaf ? 1 : 0);
          }
        }
      }
    }
    frontier_begin = frontier_end;
    frontier_end = static_cast<int32_t>(tree.state.size());
    tree.stage_begin.push_back(frontier_end);
    if (frontier_begin == frontier_end) break;
  }
  // Pad stage ranges up to the horizon so stage_begin always has T + 2
  // entries, even when every branch terminates early.
  while (static_cast<int>(tree.stage_begin.size()) < instance.horizon + 2) {
    tree.stage_begin.push_back(static_cast<int32_t>(tree.state.size()));
  }

  tree.num_histories = static_cast<int>(tree.state.size());
  // Children are contiguous and in creation order because the frontier was
  // expanded history by history; rebuild the index from parents.
  tree.child_begin.assign(tree.num_histories + 1, 0);
  for (HistoryId h = 1; h < tree.num_histories; ++h) {
    tree.child_begin[tree.parent[h] + 1] += 1;
  }
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    tree.child_begin[h + 1] += tree.child_begin[h];
  }
  tree.child_id.resize(tree.num_histories - 1 >= 0 ? tree.num_histories - 1
                                                   : 0);
  {
    std::vector<int64_t> cursor(tree.child_begin.begin(),
                                tree.child_begin.end() - 1);
    for (HistoryId h = 1; h < tree.num_histories; ++h) {
      tree.child_id[cursor[tree.parent[h]]++] = h;
    }
  }
  return tree;
}

int num_attacker_actions(const GameTree& tree, const DragInstance& instance,
                         HistoryId h) {
  if (tree.is_leaf(h)) return 0;
  return static_cast<int>(action_space(instance, tree.state[h]).size());
}

HistoryId child_at(const GameTree& tree, const DragInstance& instance,
                   HistoryId h, int a, int v, int k) {
  if (tree.is_leaf(h)) {
    throw DragError(ErrorCode::kBadHistory, "terminal history has no children");
  }
  const auto& acts = action_space(instance, tree.state[h]);
  const int num_types = tree.num_assets;
  if (a < 0 || a >= static_cast<int>(acts.size()) || v < 0 ||
      v >= num_types) {
    throw DragError(ErrorCode::kBadHistory, "child label out of range");
  }
  const int succ_count =
      static_cast<int>(successor_distribution(instance, acts[a]).size());
  if (k < 0 || k >= succ_count) {
    throw DragError(ErrorCode::kBadHistory, "successor index out of range");
  }
  // Offsets follow the frozen (action, allocation, successor) group order.
  int64_t offset = 0;
  for (int i = 0; i < a; ++i) {
    offset += num_types *
              static_cast<int64_t>(
                  successor_distribution(instance, acts[i]).size());
  }
  offset += static_cast<int64_t>(v) * succ_count + k;
  return tree.child_id[tree.child_begin[h] + offset];
}

History history_of(const GameTree& tree, const DragInstance& instance,
                   HistoryId h) {
  History record;
  std::vector<HistoryId> chain;
  for (HistoryId cur = h; cur != kNoHistory; cur = tree.parent[cur]) {
    chain.push_back(cur);
  }
  std::reverse(chain.begin(), chain.end());
  for (size_t i = 0; i < chain.size(); ++i) {
    const HistoryId cur = chain[i];
    record.states.push_back(tree.state[cur]);
    if (i + 1 < chain.size()) {
      const HistoryId next = chain[i + 1];
      const Edge& e = instance.graph.edges[tree.in_edge[next]];
      record.moves.emplace_back(e.from, e.to);
      record.allocs.push_back(tree.in_alloc[next]);
    }
  }
  record.terminal = tree.is_leaf(h);
  return record;
}

HistoryId find_history(const GameTree& tree, const DragInstance& instance,
                       const std::string& text) {
  History target = decode_history(text);
  if (target.states.empty() || target.states[0] != instance.s0) {
    return kNoHistory;
  }
  HistoryId h = 0;
  for (size_t k = 0; k < target.moves.size(); ++k) {
    if (tree.is_leaf(h)) return kNoHistory;
    const auto& acts = action_space(instance, tree.state[h]);
    HistoryId next = kNoHistory;
    for (size_t a = 0; a < acts.size() && next == kNoHistory; ++a) {
      const Edge& e = instance.graph.edges[acts[a]];
      if (e.from != target.moves[k].first || e.to != target.moves[k].second) {
        continue;
      }
      const auto succ = successor_distribution(instance, acts[a]);
      for (size_t s = 0; s < succ.size(); ++s) {
        if (succ[s].first == target.states[k + 1]) {
          const int v = target.allocs[k];
          if (v < 0 || v >= tree.num_assets) return kNoHistory;
          next = child_at(tree, instance, h, static_cast<int>(a), v,
                          static_cast<int>(s));
          break;
        }
      }
    }
    if (next == kNoHistory) return kNoHistory;
    h = next;
  }
  return h;
}

void dump_tree(const GameTree& tree, const DragInstance& instance,
               std::ostream& out) {
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    out << "{\"id\":" << h << ",\"parent\":" << tree.parent[h]
        << ",\"stage\":" << tree.stage[h] << ",\"state\":" << tree.state[h];
    if (tree.parent[h] != kNoHistory) {
      const Edge& e = instance.graph.edges[tree.in_edge[h]];
      out << ",\"move\":\"" << e.from << '-' << e.to << "\",\"alloc\":"
          << tree.in_alloc[h] << ",\"prob\":" << tree.in_prob[h];
    }
    out << ",\"leaf\":" << (tree.is_leaf(h) ? "true" : "false") << "}\n";
  }
}

}  // namespace drag
