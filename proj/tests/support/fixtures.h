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

#ifndef DRAG_TESTS_SUPPORT_FIXTURES_H_
#define DRAG_TESTS_SUPPORT_FIXTURES_H_

#include <vector>

#include "drag/game_model.h"

namespace drag::test {

// Simple chain 0 -> 1 -> ... -> n-1 with the last node as the only asset.
inline DragInstance make_path_instance(int n, int horizon, double m,
                                       double weight = 1.0) {
  DragInstance inst;
  inst.graph.num_nodes = n;
  for (int i = 0; i + 1 < n; ++i) {
    inst.graph.edges.push_back({i, i + 1, weight, {}});
  }
  inst.assets = {n - 1};
  inst.prior = {1.0};
  inst.s0 = 0;
  inst.horizon = horizon;
  inst.threat_level = m;
  validate_instance(inst);
  return inst;
}

// Star: s0 = 0 with one edge to each of nodes 1..k, all of them assets.
inline DragInstance make_star_instance(int k, const std::vector<double>& prior,
                                       int horizon, double m) {
  DragInstance inst;
  inst.graph.num_nodes = k + 1;
  for (int i = 1; i <= k; ++i) {
    inst.graph.edges.push_back({0, i, 1.0, {}});
  }
  for (int i = 1; i <= k; ++i) inst.assets.push_back(i);
  inst.prior = prior;
  inst.s0 = 0;
  inst.horizon = horizon;
  inst.threat_level = m;
  validate_instance(inst);
  return inst;
}

}  // namespace drag::test

#endif  // DRAG_TESTS_SUPPORT_FIXTURES_H_
