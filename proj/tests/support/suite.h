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

// Deterministic random-instance suites shared by the unit and acceptance
// tests. All draws go through a self-contained SplitMix64 generator so the
// suites are frozen: same seed, same instances, on any platform.

#ifndef DRAG_TESTS_SUPPORT_SUITE_H_
#define DRAG_TESTS_SUPPORT_SUITE_H_

#include <cstdint>
#include <numeric>
#include <vector>

#include "drag/game_model.h"
#include "support/oracles.h"

namespace drag::test {

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

// Exact-sum random prior: integer weights normalized by their sum.
inline std::vector<double> random_prior(Rng& rng, int k) {
  std::vector<int> w(k);
  int total = 0;
  for (int i = 0; i < k; ++i) {
    w[i] = rng.uniform_int(1, 9);
    total += w[i];
  }
  std::vector<double> prior(k);
  for (int i = 0; i < k; ++i) prior[i] = static_cast<double>(w[i]) / total;
  return prior;
}

// Random grid instance within the small-suite envelope: grids up to 3x3,
// horizons up to 5, up to three assets, deterministic or 0.9/0.1-slip
// moves. Draws are rejected (deterministically, by advancing the stream)
// until the instance validates and its pruned tree count stays under
// tree_cap, which keeps the whole suite solvable in seconds.
inline DragInstance random_small_instance(uint64_t seed,
                                          int64_t tree_cap = 4000) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const int rows = rng.uniform_int(2, 3);
    const int cols = rng.uniform_int(2, 3);
    const int cells = rows * cols;
    const int num_obstacles = rng.uniform_int(0, 1);
    std::vector<int> perm(cells);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = cells - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.uniform_int(0, i)]);
    }
    int cursor = 0;
    std::vector<int> obstacles(perm.begin(), perm.begin() + num_obstacles);
    cursor += num_obstacles;
    const int s0 = perm[cursor++];
    const int max_assets = std::min(3, cells - cursor);
    const int num_assets = rng.uniform_int(1, max_assets);
    std::vector<int> assets(perm.begin() + cursor,
                            perm.begin() + cursor + num_assets);

    GridParams params;
    params.rows = rows;
    params.cols = cols;
    params.obstacles = obstacles;
    params.assets = assets;
    params.prior = random_prior(rng, num_assets);
    params.s0 = s0;
    params.horizon = rng.uniform_int(1, 5);
    params.threat_level = static_cast<double>(rng.uniform_int(2, 30));
    const bool slip = rng.uniform_int(0, 1) == 1;

    try {
      DragInstance inst = make_grid_instance(params);
      if (slip) {
        for (Edge& e : inst.graph.edges) {
          e.transition = {{e.to, 0.9}, {e.from, 0.1}};
        }
        validate_instance(inst);
      }
      const auto counts = count_histories_per_stage(inst);
      int64_t total = 0;
      for (int64_t c : counts) total += c;
      if (total > tree_cap) continue;
      return inst;
    } catch (const DragError&) {
      continue;
    }
  }
  throw std::runtime_error("random_small_instance: no viable draw");
}

// Random horizon <= 1 instance on a small digraph for the one-shot checks:
// up to four moves out of s0, up to three assets, mixed deterministic and
// slip rows, occasional custom reward tables.
inline DragInstance random_one_shot_instance(uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    DragInstance inst;
    const int n = rng.uniform_int(3, 6);
    inst.graph.num_nodes = n;
    const int degree = rng.uniform_int(1, std::min(4, n - 1));
    std::vector<int> others;
    for (int i = 1; i < n; ++i) others.push_back(i);
    for (int i = static_cast<int>(others.size()) - 1; i > 0; --i) {
      std::swap(others[i], others[rng.uniform_int(0, i)]);
    }
    for (int d = 0; d < degree; ++d) {
      Edge e{0, others[d], 0.25 * rng.uniform_int(2, 8), {}};
      if (rng.uniform_int(0, 3) == 0 && n >= 3) {
        // Slip row: mass split between the head and a detour node.
        int detour = rng.uniform_int(0, n - 1);
        if (detour == e.to) detour = 0;
        e.transition = {{e.to, 0.9}, {detour, 0.1}};
        if (detour < e.to) {
          e.transition = {{detour, 0.1}, {e.to, 0.9}};
        }
      }
      inst.graph.edges.push_back(e);
    }
    const int num_assets = rng.uniform_int(1, std::min(3, n - 1));
    inst.assets.assign(others.begin(), others.begin() + num_assets);
    inst.prior = random_prior(rng, num_assets);
    inst.s0 = 0;
    inst.horizon = rng.uniform_int(0, 1);
    inst.threat_level = static_cast<double>(rng.uniform_int(1, 30));
    if (rng.uniform_int(0, 3) == 0) {
      inst.reward_mode = RewardMode::kCustomTable;
      for (int e = 0; e < static_cast<int>(inst.graph.edges.size()); ++e) {
        for (int theta = 0; theta < num_assets; ++theta) {
          for (int v = 0; v < num_assets; ++v) {
            if (rng.uniform_int(0, 1) == 0) {
              inst.reward_table[{theta, e, v}] =
                  0.5 * rng.uniform_int(-6, 6);
            }
          }
        }
      }
    }
    try {
      validate_instance(inst);
      return inst;
    } catch (const DragError&) {
      continue;
    }
  }
  throw std::runtime_error("random_one_shot_instance: no viable draw");
}

inline constexpr uint64_t kSmallSuiteSeed = 20260801ULL;
inline constexpr uint64_t kOneShotSuiteSeed = 20260802ULL;

inline std::vector<DragInstance> small_suite(int count = 50) {
  std::vector<DragInstance> suite;
  suite.reserve(count);
  for (int i = 0; i < count; ++i) {
    suite.push_back(random_small_instance(kSmallSuiteSeed + 7919 * i));
  }
  return suite;
}

inline std::vector<DragInstance> one_shot_suite(int count = 100) {
  std::vector<DragInstance> suite;
  suite.reserve(count);
  for (int i = 0; i < count; ++i) {
    suite.push_back(random_one_shot_instance(kOneShotSuiteSeed + 104729 * i));
  }
  return suite;
}

}  // namespace drag::test

#endif  // DRAG_TESTS_SUPPORT_SUITE_H_
