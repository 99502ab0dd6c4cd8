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

#include "drag/game_model.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace drag {

namespace {

using nlohmann::json;

constexpr double kPriorTol = 1e-9;
constexpr double kTransitionTol = 1e-9;

bool is_asset_node(const DragInstance& instance, int s) {
  return std::find(instance.assets.begin(), instance.assets.end(), s) !=
         instance.assets.end();
}

// Breadth-first reachability over non-asset nodes, depth-limited to
// max_depth; returns the set of (non-asset) nodes the attacker can occupy
// while the game is still running.
std::vector<int> reachable_interior(const DragInstance& instance,
                                    int max_depth) {
  std::vector<int> depth(instance.graph.num_nodes, -1);
  std::vector<int> found;
  if (max_depth < 0 || is_asset_node(instance, instance.s0)) return found;
  std::deque<int> queue;
  depth[instance.s0] = 0;
  queue.push_back(instance.s0);
  found.push_back(instance.s0);
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    if (depth[s] >= max_depth) continue;
    for (int e : instance.out_edges[s]) {
      auto succ = successor_distribution(instance, e);
      for (const auto& [sp, p] : succ) {
        (void)p;
        if (depth[sp] >= 0 || is_asset_node(instance, sp)) continue;
        depth[sp] = depth[s] + 1;
        queue.push_back(sp);
        found.push_back(sp);
      }
    }
  }
  return found;
}

}  // namespace

void validate_instance(DragInstance& instance) {
  const int n = instance.graph.num_nodes;
  if (n <= 0) {
    throw DragError(ErrorCode::kInvalidNode, "graph has no nodes");
  }
  if (instance.s0 < 0 || instance.s0 >= n) {
    throw DragError(ErrorCode::kInvalidNode,
                    "start node " + std::to_string(instance.s0) +
                        " outside the node set");
  }
  if (instance.horizon < 0) {
    throw DragError(ErrorCode::kInvalidHorizon, "horizon must be >= 0");
  }
  if (!(instance.threat_level >= 0.0) ||
      !std::isfinite(instance.threat_level)) {
    throw DragError(ErrorCode::kInvalidThreatLevel,
                    "threat level must be finite and >= 0");
  }

  instance.out_edges.assign(n, {});
  for (int e = 0; e < static_cast<int>(instance.graph.edges.size()); ++e) {
    const Edge& edge = instance.graph.edges[e];
    if (edge.from < 0 || edge.from >= n || edge.to < 0 || edge.to >= n) {
      throw DragError(ErrorCode::kInvalidEdge,
                      "edge " + std::to_string(e) + " endpoint outside nodes");
    }
    if (!(edge.weight > 0.0) || !std::isfinite(edge.weight)) {
      throw DragError(ErrorCode::kNonpositiveWeight,
                      "edge " + std::to_string(e) + " weight must be > 0");
    }
    if (!edge.transition.empty()) {
      double total = 0.0;
      std::set<int> seen;
      for (const auto& [sp, p] : edge.transition) {
        if (sp < 0 || sp >= n) {
          throw DragError(ErrorCode::kInvalidNode,
                          "edge " + std::to_string(e) +
                              " transition support outside nodes");
        }
        if (!seen.insert(sp).second) {
          throw DragError(ErrorCode::kInvalidEdge,
                          "edge " + std::to_string(e) +
                              " transition lists a successor twice");
        }
        if (!(p > 0.0) || !std::isfinite(p)) {
          throw DragError(ErrorCode::kUnnormalizedTransition,
                          "edge " + std::to_string(e) +
                              " transition probability must be > 0");
        }
        total += p;
      }
      if (std::fabs(total - 1.0) > kTransitionTol) {
        throw DragError(ErrorCode::kUnnormalizedTransition,
                        "edge " + std::to_string(e) +
                            " transition row sums to " + std::to_string(total));
      }
    }
    instance.out_edges[edge.from].push_back(e);
  }

  if (instance.assets.empty()) {
    throw DragError(ErrorCode::kNoAssets, "no candidate assets");
  }
  std::set<int> asset_set;
  for (int a : instance.assets) {
    if (a < 0 || a >= n) {
      throw DragError(ErrorCode::kInvalidNode,
                      "asset node " + std::to_string(a) + " outside nodes");
    }
    if (!asset_set.insert(a).second) {
      throw DragError(ErrorCode::kDuplicateAsset,
                      "asset node " + std::to_string(a) + " listed twice");
    }
  }
  if (instance.prior.size() != instance.assets.size()) {
    throw DragError(ErrorCode::kPriorSizeMismatch,
                    "prior has " + std::to_string(instance.prior.size()) +
                        " entries for " + std::to_string(instance.assets.size()) +
                        " assets");
  }
  double prior_sum = 0.0;
  for (double p : instance.prior) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw DragError(ErrorCode::kPriorOffSimplex,
                      "prior entries must be finite and >= 0");
    }
    prior_sum += p;
  }
  if (std::fabs(prior_sum - 1.0) > kPriorTol) {
    throw DragError(ErrorCode::kPriorOffSimplex,
                    "prior sums to " + std::to_string(prior_sum));
  }

  for (const auto& [key, value] : instance.reward_table) {
    const auto& [theta, e, v] = key;
    if (theta < 0 || theta >= static_cast<int>(instance.assets.size()) ||
        e < 0 || e >= static_cast<int>(instance.graph.edges.size()) || v < 0 ||
        v >= static_cast<int>(instance.assets.size())) {
      throw DragError(ErrorCode::kInvalidEdge,
                      "reward table key outside the instance");
    }
    if (!std::isfinite(value)) {
      throw DragError(ErrorCode::kInvalidEdge,
                      "reward table value must be finite");
    }
  }

  // A non-asset node the attacker can occupy strictly before the horizon
  // must offer a move; otherwise play cannot continue there.
  for (int s : reachable_interior(instance, instance.horizon - 1)) {
    if (instance.out_edges[s].empty()) {
      throw DragError(ErrorCode::kDeadEnd,
                      "node " + std::to_string(s) +
                          " is a reachable non-asset dead end");
    }
  }
}

const std::vector<int>& action_space(const DragInstance& instance, int s) {
  return instance.out_edges.at(s);
}

std::vector<std::pair<int, double>> successor_distribution(
    const DragInstance& instance, int edge_index) {
  const Edge& edge = instance.graph.edges.at(edge_index);
  if (edge.transition.empty()) return {{edge.to, 1.0}};
  return edge.transition;
}

double running_reward(const DragInstance& instance, const History& h,
                      int theta, int edge_index, int alloc) {
  if (instance.reward_mode == RewardMode::kCustomTable) {
    auto it = instance.reward_table.find({theta, edge_index, alloc});
    return it == instance.reward_table.end() ? 0.0 : it->second;
  }
  for (int s : h.states) {
    if (is_asset_node(instance, s)) return 0.0;
  }
  if (alloc != theta) return 0.0;
  return instance.graph.edges.at(edge_index).weight;
}

double terminal_reward(const DragInstance& instance, const History& h,
                       int theta) {
  return h.states.back() == instance.assets.at(theta)
             ? -instance.threat_level
             : 0.0;
}

bool is_terminal(const DragInstance& instance, const History& h) {
  return is_asset_node(instance, h.states.back()) ||
         h.stage() >= instance.horizon;
}

void validate_history(const DragInstance& instance, const History& h) {
  if (h.states.empty() || h.moves.size() + 1 != h.states.size() ||
      h.allocs.size() != h.moves.size()) {
    throw DragError(ErrorCode::kBadHistory, "ragged history record");
  }
  for (size_t k = 0; k < h.moves.size(); ++k) {
    const auto [from, to] = h.moves[k];
    if (from != h.states[k]) {
      throw DragError(ErrorCode::kBadHistory,
                      "move " + std::to_string(k) +
                          " does not start at the current state");
    }
    if (from < 0 || from >= instance.graph.num_nodes) {
      throw DragError(ErrorCode::kBadHistory, "state outside the node set");
    }
    bool edge_ok = false;
    bool succ_ok = false;
    for (int e : instance.out_edges[from]) {
      if (instance.graph.edges[e].to != to) continue;
      edge_ok = true;
      for (const auto& [sp, p] : successor_distribution(instance, e)) {
        (void)p;
        if (sp == h.states[k + 1]) succ_ok = true;
      }
      if (succ_ok) break;
    }
    if (!edge_ok) {
      throw DragError(ErrorCode::kBadHistory,
                      "move " + std::to_string(k) + " is not a declared edge");
    }
    if (!succ_ok) {
      throw DragError(ErrorCode::kBadHistory,
                      "state after move " + std::to_string(k) +
                          " is outside the transition support");
    }
    if (h.allocs[k] < 0 ||
        h.allocs[k] >= static_cast<int>(instance.assets.size())) {
      throw DragError(ErrorCode::kBadHistory,
                      "allocation " + std::to_string(k) + " out of range");
    }
    if (is_asset_node(instance, h.states[k])) {
      throw DragError(ErrorCode::kBadHistory,
                      "history continues past an asset arrival");
    }
  }
  if (h.stage() > instance.horizon) {
    throw DragError(ErrorCode::kBadHistory, "history exceeds the horizon");
  }
  const int last = h.states.back();
  if (last < 0 || last >= instance.graph.num_nodes) {
    throw DragError(ErrorCode::kBadHistory, "state outside the node set");
  }
}

std::string encode_history(const History& h) {
  std::ostringstream out;
  for (size_t k = 0; k < h.states.size(); ++k) {
    if (k > 0) out << '|';
    out << h.states[k];
    if (k < h.moves.size()) {
      out << '|' << h.moves[k].first << '-' << h.moves[k].second << '>'
          << h.allocs[k];
    }
  }
  return out.str();
}

namespace {

// Minimal tokenizer for the canonical history text; reports byte positions.
struct HistoryParser {
  const std::string& text;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw DragError(ErrorCode::kParseError,
                    what + " at position " + std::to_string(pos));
  }
  bool done() const { return pos >= text.size(); }
  int number() {
    const size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(
                                    text[pos]))) {
      ++pos;
    }
    if (pos == start) fail("expected a number");
    if (pos - start > 9) fail("number too long");
    return std::stoi(text.substr(start, pos - start));
  }
  void expect(char c) {
    if (done() || text[pos] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos;
  }
};

}  // namespace

History decode_history(const std::string& text) {
  HistoryParser p{text};
  History h;
  h.states.push_back(p.number());
  while (!p.done()) {
    p.expect('|');
    const int from = p.number();
    p.expect('-');
    const int to = p.number();
    p.expect('>');
    const int alloc = p.number();
    p.expect('|');
    const int state = p.number();
    h.moves.emplace_back(from, to);
    h.allocs.push_back(alloc);
    h.states.push_back(state);
  }
  return h;
}

DragInstance make_grid_instance(const GridParams& params) {
  if (params.rows <= 0 || params.cols <= 0) {
    throw DragError(ErrorCode::kBadGrid, "grid must have positive extent");
  }
  const int cells = params.rows * params.cols;
  std::vector<bool> blocked(cells, false);
  for (int c : params.obstacles) {
    if (c < 0 || c >= cells) {
      throw DragError(ErrorCode::kBadGrid,
                      "obstacle cell " + std::to_string(c) + " outside grid");
    }
    blocked[c] = true;
  }
  for (int a : params.assets) {
    if (a < 0 || a >= cells || blocked[a]) {
      throw DragError(ErrorCode::kBadGrid,
                      "asset cell " + std::to_string(a) +
                          " outside grid or blocked");
    }
  }
  if (params.s0 < 0 || params.s0 >= cells || blocked[params.s0]) {
    throw DragError(ErrorCode::kBadGrid, "start cell outside grid or blocked");
  }

  DragInstance inst;
  inst.graph.num_nodes = cells;
  // Neighbors in up, left, right, down order for each free cell scanned
  // row-major; this fixes the attacker's action indexing.
  for (int r = 0; r < params.rows; ++r) {
    for (int c = 0; c < params.cols; ++c) {
      const int cell = r * params.cols + c;
      if (blocked[cell]) continue;
      const int dr[] = {-1, 0, 0, 1};
      const int dc[] = {0, -1, 1, 0};
      for (int d = 0; d < 4; ++d) {
        const int nr = r + dr[d];
        const int nc = c + dc[d];
        if (nr < 0 || nr >= params.rows || nc < 0 || nc >= params.cols) {
          continue;
        }
        const int neighbor = nr * params.cols + nc;
        if (blocked[neighbor]) continue;
        inst.graph.edges.push_back({cell, neighbor, 1.0, {}});
      }
    }
  }
  inst.assets = params.assets;
  inst.prior = params.prior;
  inst.s0 = params.s0;
  inst.horizon = params.horizon;
  inst.threat_level = params.threat_level;
  inst.grid = GridSpec{params.rows, params.cols, params.obstacles};

  // Plain graph reachability from s0 over free cells; every asset must be
  // in the start component.
  std::vector<bool> seen(cells, false);
  std::deque<int> queue;
  seen[inst.s0] = true;
  queue.push_back(inst.s0);
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (const Edge& e : inst.graph.edges) {
      if (e.from == s && !seen[e.to]) {
        seen[e.to] = true;
        queue.push_back(e.to);
      }
    }
  }
  for (size_t i = 0; i < params.assets.size(); ++i) {
    if (!seen[params.assets[i]]) {
      throw DragError(ErrorCode::kDisconnectedAsset,
                      "asset cell " + std::to_string(params.assets[i]) +
                          " unreachable from the start cell");
    }
  }

  validate_instance(inst);
  return inst;
}

namespace {

json instance_json(const DragInstance& instance) {
  json j;
  j["nodes"] = instance.graph.num_nodes;
  json edges = json::array();
  for (const Edge& e : instance.graph.edges) {
    json je;
    je["from"] = e.from;
    je["to"] = e.to;
    je["weight"] = e.weight;
    if (!e.transition.empty()) {
      json rows = json::array();
      for (const auto& [sp, p] : e.transition) {
        rows.push_back({{"to", sp}, {"prob", p}});
      }
      je["transition"] = rows;
    }
    edges.push_back(je);
  }
  j["edges"] = edges;
  j["assets"] = instance.assets;
  j["prior"] = instance.prior;
  j["s0"] = instance.s0;
  j["horizon"] = instance.horizon;
  j["threat_level"] = instance.threat_level;
  if (instance.reward_mode == RewardMode::kPaperDefault) {
    j["reward_mode"] = "paper_default";
  } else {
    j["reward_mode"] = "custom_table";
    json table = json::array();
    for (const auto& [key, value] : instance.reward_table) {
      const auto& [theta, e, v] = key;
      table.push_back({{"theta", theta},
                       {"edge", {instance.graph.edges[e].from,
                                 instance.graph.edges[e].to}},
                       {"alloc", v},
                       {"value", value}});
    }
    j["reward_table"] = table;
  }
  if (instance.grid.has_value()) {
    j["grid_meta"] = {{"rows", instance.grid->rows},
                      {"cols", instance.grid->cols},
                      {"obstacles", instance.grid->obstacles}};
  }
  return j;
}

DragInstance instance_from_json(const json& j) {
  DragInstance inst;
  try {
    if (j.contains("grid")) {
      GridParams params;
      const json& g = j.at("grid");
      params.rows = g.at("rows").get<int>();
      params.cols = g.at("cols").get<int>();
      if (g.contains("obstacles")) {
        params.obstacles = g.at("obstacles").get<std::vector<int>>();
      }
      // Grid shorthand: remaining fields may live inside the grid object or
      // at the top level.
      const json& outer = j;
      auto pick = [&](const char* key) -> const json& {
        return g.contains(key) ? g.at(key) : outer.at(key);
      };
      params.assets = pick("assets").get<std::vector<int>>();
      params.prior = pick("prior").get<std::vector<double>>();
      params.s0 = pick("s0").get<int>();
      params.horizon = pick("horizon").get<int>();
      params.threat_level = pick("threat_level").get<double>();
      return make_grid_instance(params);
    }
    inst.graph.num_nodes = j.at("nodes").get<int>();
    for (const json& je : j.at("edges")) {
      Edge e;
      e.from = je.at("from").get<int>();
      e.to = je.at("to").get<int>();
      e.weight = je.value("weight", 1.0);
      if (je.contains("transition")) {
        for (const json& row : je.at("transition")) {
          e.transition.emplace_back(row.at("to").get<int>(),
                                    row.at("prob").get<double>());
        }
      }
      inst.graph.edges.push_back(e);
    }
    inst.assets = j.at("assets").get<std::vector<int>>();
    inst.prior = j.at("prior").get<std::vector<double>>();
    inst.s0 = j.at("s0").get<int>();
    inst.horizon = j.at("horizon").get<int>();
    inst.threat_level = j.at("threat_level").get<double>();
    const std::string mode = j.value("reward_mode", "paper_default");
    if (mode == "custom_table") {
      inst.reward_mode = RewardMode::kCustomTable;
      for (const json& row : j.value("reward_table", json::array())) {
        const int from = row.at("edge").at(0).get<int>();
        const int to = row.at("edge").at(1).get<int>();
        int edge_index = -1;
        for (int e = 0; e < static_cast<int>(inst.graph.edges.size()); ++e) {
          if (inst.graph.edges[e].from == from &&
              inst.graph.edges[e].to == to) {
            edge_index = e;
            break;
          }
        }
        if (edge_index < 0) {
          throw DragError(ErrorCode::kParseError,
                          "reward table references an unknown edge");
        }
        inst.reward_table[{row.at("theta").get<int>(), edge_index,
                           row.at("alloc").get<int>()}] =
            row.at("value").get<double>();
      }
    } else if (mode != "paper_default") {
      throw DragError(ErrorCode::kParseError,
                      "unknown reward_mode '" + mode + "'");
    }
    if (j.contains("grid_meta")) {
      GridSpec grid;
      grid.rows = j.at("grid_meta").at("rows").get<int>();
      grid.cols = j.at("grid_meta").at("cols").get<int>();
      grid.obstacles =
          j.at("grid_meta").value("obstacles", std::vector<int>{});
      inst.grid = grid;
    }
  } catch (const json::exception& e) {
    throw DragError(ErrorCode::kParseError,
                    std::string("malformed instance json: ") + e.what());
  }
  validate_instance(inst);
  return inst;
}

}  // namespace

DragInstance parse_instance(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) {
    throw DragError(ErrorCode::kParseError, "instance is not valid json");
  }
  return instance_from_json(j);
}

DragInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DragError(ErrorCode::kIoError, "cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string instance_to_json(const DragInstance& instance) {
  return instance_json(instance).dump(2);
}

void save_instance(const DragInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw DragError(ErrorCode::kIoError, "cannot write " + path);
  }
  out << instance_to_json(instance) << '\n';
}

}  // namespace drag
