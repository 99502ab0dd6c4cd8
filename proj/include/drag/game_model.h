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

#ifndef DRAG_GAME_MODEL_H_
#define DRAG_GAME_MODEL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

// Core model of a deceptive resource allocation game: an attacker moves on a
// directed graph toward one of several candidate asset nodes; a defender who
// knows which asset is real allocates a detection resource to one candidate
// per stage. Payoffs are zero-sum: the defender collects the allocated
// resource amount whenever the allocation matches the true asset while the
// attacker is still in transit, and pays a penalty m if the attacker reaches
// the true asset. The game ends on arrival at any candidate asset or at the
// horizon T.

namespace drag {

enum class ErrorCode {
  kPriorOffSimplex,
  kPriorSizeMismatch,
  kNonpositiveWeight,
  kUnnormalizedTransition,
  kInvalidNode,
  kInvalidEdge,
  kDuplicateEdge,
  kNoAssets,
  kDuplicateAsset,
  kInvalidHorizon,
  kInvalidThreatLevel,
  kDeadEnd,
  kDisconnectedAsset,
  kBadGrid,
  kParseError,
  kBadHistory,
  kSizeCapExceeded,
  kSolverFailure,
  kInvalidPlan,
  kUnknownBaseline,
  kUnsupported,
  kIoError,
};

// All library errors carry a distinct code so callers (and the CLI) can map
// failures to exit codes without string matching.
class DragError : public std::runtime_error {
 public:
  DragError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Directed edge. An empty transition list means the move is deterministic:
// the attacker lands on `to` with probability 1. A non-empty list gives the
// full successor distribution for taking this edge (must sum to 1).
struct Edge {
  int from = 0;
  int to = 0;
  double weight = 1.0;
  std::vector<std::pair<int, double>> transition;
};

struct GraphSpec {
  int num_nodes = 0;
  std::vector<Edge> edges;
};

// Present when the instance was built from the grid shorthand; used only for
// plotting and reporting, never for game semantics.
struct GridSpec {
  int rows = 0;
  int cols = 0;
  std::vector<int> obstacles;
};

enum class RewardMode { kPaperDefault, kCustomTable };

struct DragInstance {
  GraphSpec graph;
  std::vector<int> assets;      // Candidate asset nodes, in declaration order.
  std::vector<double> prior;    // b0 over assets; same order.
  int s0 = 0;
  int horizon = 0;              // T; stages are indexed 0..T.
  double threat_level = 0.0;    // m.
  RewardMode reward_mode = RewardMode::kPaperDefault;
  // Custom running rewards keyed by (theta index, edge index, alloc index);
  // entries absent from the table are 0. Ignored in paper-default mode.
  std::map<std::tuple<int, int, int>, double> reward_table;
  std::optional<GridSpec> grid;

  // Edge indices leaving each node, in edge declaration order. Filled by
  // validate_instance; everything downstream assumes a validated instance.
  std::vector<std::vector<int>> out_edges;
};

// A play prefix (s_0, u_0, v_0, s_1, ..., s_t). Moves are stored as
// (from, to) endpoint pairs so a history can be decoded without an instance;
// allocations are indices into the instance's asset list.
struct History {
  std::vector<int> states;
  std::vector<std::pair<int, int>> moves;
  std::vector<int> allocs;
  bool terminal = false;

  int stage() const { return static_cast<int>(states.size()) - 1; }
};

// Belief over asset indices. May be scaled by a positive constant: the game
// value is positively homogeneous in the belief, so scaled beliefs are legal
// intermediate objects.
using Belief = std::vector<double>;

// Rebuilds the adjacency index and checks every structural invariant:
// endpoints in range, positive weights, transition rows summing to 1 with
// support inside the node set, at least one distinct asset with a matching
// simplex prior, nonnegative horizon and threat level, and no non-asset
// dead-end node reachable from s0 strictly before the horizon (the attacker
// would be stuck there with no legal move). Throws DragError.
void validate_instance(DragInstance& instance);

// Edge indices available to the attacker at node s. Requires a validated
// instance.
const std::vector<int>& action_space(const DragInstance& instance, int s);

// Successor distribution for taking edge `edge_index`: the declared
// transition row, or a point mass on the edge head if none was declared.
std::vector<std::pair<int, double>> successor_distribution(
    const DragInstance& instance, int edge_index);

// Stage reward for the pair (u, v) at history h when the true asset index is
// theta. Paper-default mode: w(u) * 1(v == theta) * 1(no state of h is an
// asset). Custom mode: the table entry for (theta, u, v).
double running_reward(const DragInstance& instance, const History& h,
                      int theta, int edge_index, int alloc);

// Terminal payoff at a terminal history: -m if the final state is the true
// asset, 0 if it is a decoy or the horizon expired off-asset.
double terminal_reward(const DragInstance& instance, const History& h,
                       int theta);

// True iff the last state is an asset or the stage equals the horizon.
bool is_terminal(const DragInstance& instance, const History& h);

// Checks that a decoded history is consistent with the instance: moves are
// declared edges chained from s_t to s_{t+1} through declared transition
// support, allocations are in range, and no state before the last is an
// asset. Throws DragError(kBadHistory).
void validate_history(const DragInstance& instance, const History& h);

// Canonical text form "s0|f-t>v|s1|...|st" where each move u_k is rendered
// as "from-to" and each allocation v_k as its asset index.
std::string encode_history(const History& h);

// Inverse of encode_history. Purely structural: instance-level checks are
// validate_history's job. Throws DragError(kParseError) with the byte
// position of the first offending character.
History decode_history(const std::string& text);

struct GridParams {
  int rows = 0;
  int cols = 0;
  std::vector<int> obstacles;   // Row-major cell indices.
  std::vector<int> assets;      // Row-major cell indices.
  std::vector<double> prior;
  int s0 = 0;
  int horizon = 0;
  double threat_level = 0.0;
};

// Four-connected grid with obstacle cells removed and bidirectional unit-
// weight edges between free neighbors. Cells keep their row-major indices as
// node ids (obstacle cells become isolated unreachable nodes). Every asset
// must be reachable from s0 through free cells; otherwise
// DragError(kDisconnectedAsset).
DragInstance make_grid_instance(const GridParams& params);

// JSON (de)serialization. Loaders validate before returning.
DragInstance load_instance(const std::string& path);
DragInstance parse_instance(const std::string& json_text);
std::string instance_to_json(const DragInstance& instance);
void save_instance(const DragInstance& instance, const std::string& path);

}  // namespace drag

#endif  // DRAG_GAME_MODEL_H_
