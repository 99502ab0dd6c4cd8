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
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "drag/evaluation.h"
#include "eval_internal.h"

namespace drag::eval {
namespace {

using internal::leaf_payoff;
using internal::stage_reward;

// SplitMix64. Every episode owns an independent stream whose seed is the
// scrambled (seed, episode) pair, so the draw sequence of an episode does
// not depend on how episodes are split across workers.
uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct SplitMix {
  uint64_t s;
  explicit SplitMix(uint64_t seed) : s(seed) {}
  uint64_t next() {
    s += 0x9e3779b97f4a7c15ULL;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Index drawn from an unnormalized nonnegative row. Rounding can push the
// cumulative sum below the draw; the last supported index absorbs that.
int sample_row(const double* p, int n, double r) {
  double cum = 0.0;
  for (int i = 0; i < n; ++i) {
    cum += p[i];
    if (r < cum) return i;
  }
  for (int i = n - 1; i >= 0; --i) {
    if (p[i] > 0.0) return i;
  }
  throw DragError(ErrorCode::kInvalidPlan, "sampled an all-zero policy row");
}

int resolve_threads(int requested, int64_t episodes) {
  int threads = requested;
  if (threads <= 0) {
    if (const char* env = std::getenv("DRAG_THREADS")) {
      threads = std::atoi(env);
    }
  }
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  if (threads <= 0) threads = 1;
  if (static_cast<int64_t>(threads) > episodes) {
    threads = static_cast<int>(episodes);
  }
  return threads;
}

}  // namespace

RolloutResult rollout(const GameTree& tree, const DragInstance& instance,
                      const pbne::AttackerStrategy& sigma,
                      const pbne::DefenderStrategy& tau,
                      const RolloutOptions& options) {
  const int types = static_cast<int>(instance.assets.size());
  if (options.episodes <= 0) {
    throw DragError(ErrorCode::kUnsupported, "episode count must be positive");
  }
  if (options.fixed_theta &&
      (*options.fixed_theta < 0 || *options.fixed_theta >= types)) {
    throw DragError(ErrorCode::kUnsupported,
                    "fixed type index outside the asset list");
  }

  const int64_t n = options.episodes;
  std::vector<double> rewards(n, 0.0);
  std::vector<RolloutEpisode> log;
  if (options.log_trajectories) log.resize(n);

  const auto play = [&](int64_t episode) {
    SplitMix rng(mix64(options.seed ^ mix64(static_cast<uint64_t>(episode))));
    const int theta = options.fixed_theta
                          ? *options.fixed_theta
                          : sample_row(instance.prior.data(), types, rng.u01());
    double total = 0.0;
    HistoryId h = 0;
    History record;
    if (options.log_trajectories) record.states.push_back(instance.s0);
    while (!tree.is_leaf(h)) {
      const auto& actions = action_space(instance, tree.state[h]);
      const int a = sample_row(sigma.row(h),
                               static_cast<int>(actions.size()), rng.u01());
      const int v = sample_row(tau.row(h, theta), types, rng.u01());
      const auto succ = successor_distribution(instance, actions[a]);
      int k = 0;
      if (succ.size() > 1) {
        const double r = rng.u01();
        double cum = 0.0;
        k = static_cast<int>(succ.size()) - 1;
        for (size_t i = 0; i < succ.size(); ++i) {
          cum += succ[i].second;
          if (r < cum) {
            k = static_cast<int>(i);
            break;
          }
        }
      }
      total += stage_reward(instance, actions[a], v, theta);
      h = child_at(tree, instance, h, a, v, k);
      if (options.log_trajectories) {
        const Edge& e = instance.graph.edges[actions[a]];
        record.moves.push_back({e.from, e.to});
        record.allocs.push_back(v);
        record.states.push_back(tree.state[h]);
      }
    }
    total += leaf_payoff(instance, tree.state[h], theta);
    rewards[episode] = total;
    if (options.log_trajectories) {
      record.terminal = true;
      log[episode] = {theta, total, encode_history(record)};
    }
  };

  const int threads = resolve_threads(options.threads, n);
  if (threads <= 1) {
    for (int64_t e = 0; e < n; ++e) play(e);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int64_t chunk = (n + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const int64_t lo = w * chunk;
      const int64_t hi = std::min(n, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi] {
        for (int64_t e = lo; e < hi; ++e) play(e);
      });
    }
    for (auto& t : pool) t.join();
  }

  // Serial reduction in episode order keeps the statistics independent of
  // the worker layout.
  RolloutResult result;
  result.episodes = n;
  double sum = 0.0;
  for (double x : rewards) sum += x;
  result.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double x : rewards) ss += (x - result.mean) * (x - result.mean);
    result.std_error =
        std::sqrt(ss / (static_cast<double>(n - 1) * static_cast<double>(n)));
  }
  result.log = std::move(log);
  return result;
}

}  // namespace drag::eval
