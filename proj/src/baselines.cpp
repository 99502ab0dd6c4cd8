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

#include <cctype>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "drag/evaluation.h"

namespace drag::eval {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distance to `target` from every node along declared edges (Dijkstra over
// the reversed graph). The walkers are deliberately naive: they follow the
// declared edge heads and ignore slip rows entirely.
std::vector<double> distance_to(const DragInstance& inst, int target) {
  const int n = inst.graph.num_nodes;
  std::vector<std::vector<std::pair<int, double>>> incoming(n);
  for (const Edge& e : inst.graph.edges) {
    incoming[e.to].push_back({e.from, e.weight});
  }
  std::vector<double> dist(n, kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  dist[target] = 0.0;
  queue.push({0.0, target});
  while (!queue.empty()) {
    const auto [d, s] = queue.top();
    queue.pop();
    if (d > dist[s]) continue;
    for (const auto& [prev, w] : incoming[s]) {
      if (d + w < dist[prev]) {
        dist[prev] = d + w;
        queue.push({dist[prev], prev});
      }
    }
  }
  return dist;
}

// C<k>-D names: a constant-allocation index between "C" and "-D".
bool parse_constant_alloc(const std::string& name, int* index) {
  if (name.size() < 4 || name.size() > 12 || name.front() != 'C') return false;
  if (name.compare(name.size() - 2, 2, "-D") != 0) return false;
  const std::string digits = name.substr(1, name.size() - 3);
  if (digits.empty()) return false;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  if (index != nullptr) *index = std::stoi(digits);
  return true;
}

pbne::AttackerStrategy empty_attacker(const GameTree& tree,
                                      const DragInstance& inst) {
  pbne::AttackerStrategy s;
  s.sigma_begin.assign(tree.num_histories + 1, 0);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    const int width =
        tree.is_leaf(h) ? 0 : num_attacker_actions(tree, inst, h);
    s.sigma_begin[h + 1] = s.sigma_begin[h] + width;
  }
  s.sigma.assign(s.sigma_begin.back(), 0.0);
  return s;
}

pbne::DefenderStrategy empty_defender(const GameTree& tree,
                                      const DragInstance& inst) {
  const int types = static_cast<int>(inst.assets.size());
  pbne::DefenderStrategy s;
  s.num_assets = types;
  s.tau_begin.assign(tree.num_histories + 1, 0);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    const int width = tree.is_leaf(h) ? 0 : types * types;
    s.tau_begin[h + 1] = s.tau_begin[h] + width;
  }
  s.tau.assign(s.tau_begin.back(), 0.0);
  return s;
}

// Prior argmax / argmin with ties to the lowest asset index.
int extreme_prior_index(const DragInstance& inst, bool highest) {
  int best = 0;
  for (size_t t = 1; t < inst.prior.size(); ++t) {
    if (highest ? inst.prior[t] > inst.prior[best]
                : inst.prior[t] < inst.prior[best]) {
      best = static_cast<int>(t);
    }
  }
  return best;
}

pbne::AttackerStrategy shortest_path_walker(const GameTree& tree,
                                            const DragInstance& inst,
                                            bool highest) {
  const int target = inst.assets[extreme_prior_index(inst, highest)];
  const std::vector<double> dist = distance_to(inst, target);
  pbne::AttackerStrategy s = empty_attacker(tree, inst);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    const int width = s.row_size(h);
    if (width == 0) continue;
    const auto& actions = action_space(inst, tree.state[h]);
    int best = -1;
    double best_score = kInf;
    for (int a = 0; a < width; ++a) {
      const Edge& e = inst.graph.edges[actions[a]];
      const double score = e.weight + dist[e.to];
      if (score < best_score) {
        best_score = score;
        best = a;
      }
    }
    double* row = s.sigma.data() + s.sigma_begin[h];
    if (best < 0) {
      // Target unreachable from here: the walker has no guidance left.
      for (int a = 0; a < width; ++a) row[a] = 1.0 / width;
    } else {
      row[best] = 1.0;
    }
  }
  return s;
}

}  // namespace

bool is_attacker_baseline(const std::string& name) {
  return name == "RS-A" || name == "HPSP-A" || name == "LPSP-A";
}

bool is_defender_baseline(const std::string& name) {
  if (name == "RS-D" || name == "TC-D" || name == "TO-D") return true;
  return parse_constant_alloc(name, nullptr);
}

pbne::AttackerStrategy attacker_baseline(const GameTree& tree,
                                         const DragInstance& instance,
                                         const std::string& name) {
  if (name == "RS-A") {
    pbne::AttackerStrategy s = empty_attacker(tree, instance);
    for (HistoryId h = 0; h < tree.num_histories; ++h) {
      const int width = s.row_size(h);
      double* row = s.sigma.data() + s.sigma_begin[h];
      for (int a = 0; a < width; ++a) row[a] = 1.0 / width;
    }
    return s;
  }
  if (name == "HPSP-A") return shortest_path_walker(tree, instance, true);
  if (name == "LPSP-A") return shortest_path_walker(tree, instance, false);
  throw DragError(ErrorCode::kUnknownBaseline,
                  "unknown attacker baseline '" + name + "'");
}

pbne::DefenderStrategy defender_baseline(const GameTree& tree,
                                         const DragInstance& instance,
                                         const std::string& name) {
  const int types = static_cast<int>(instance.assets.size());
  int constant = -1;
  enum class Kind { kUniform, kTruth, kOpposite, kConstant } kind;
  if (name == "RS-D") {
    kind = Kind::kUniform;
  } else if (name == "TC-D") {
    kind = Kind::kTruth;
  } else if (name == "TO-D") {
    kind = Kind::kOpposite;
  } else if (parse_constant_alloc(name, &constant) && constant < types) {
    kind = Kind::kConstant;
  } else {
    throw DragError(ErrorCode::kUnknownBaseline,
                    "unknown defender baseline '" + name + "'");
  }

  pbne::DefenderStrategy s = empty_defender(tree, instance);
  for (HistoryId h = 0; h < tree.num_histories; ++h) {
    if (tree.is_leaf(h)) continue;
    for (int t = 0; t < types; ++t) {
      double* row = s.tau.data() + s.tau_begin[h] +
                    static_cast<int64_t>(t) * types;
      switch (kind) {
        case Kind::kUniform:
          for (int v = 0; v < types; ++v) row[v] = 1.0 / types;
          break;
        case Kind::kTruth:
          row[t] = 1.0;
          break;
        case Kind::kOpposite:
          if (types == 1) {
            row[0] = 1.0;
          } else {
            for (int v = 0; v < types; ++v) {
              if (v != t) row[v] = 1.0 / (types - 1);
            }
          }
          break;
        case Kind::kConstant:
          row[constant] = 1.0;
          break;
      }
    }
  }
  return s;
}

}  // namespace drag::eval
