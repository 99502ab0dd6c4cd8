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
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "drag/evaluation.h"

namespace drag::eval {
namespace {

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759",
                          "#76b7b2", "#59a14f", "#edc948"};
constexpr int kPaletteSize = 6;

const char* color_of(int index) { return kPalette[index % kPaletteSize]; }

void save(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw DragError(ErrorCode::kIoError,
                    "cannot write plot file " + path.string());
  }
}

// Per-stage allocation frequencies as grouped bars, one color per asset.
std::string allocation_svg(const DragInstance& inst,
                           const std::vector<History>& plays) {
  const int types = static_cast<int>(inst.assets.size());
  int stages = 0;
  for (const History& h : plays) {
    stages = std::max(stages, static_cast<int>(h.allocs.size()));
  }
  std::vector<std::vector<double>> freq(stages,
                                        std::vector<double>(types, 0.0));
  std::vector<int> reach(stages, 0);
  for (const History& h : plays) {
    for (size_t t = 0; t < h.allocs.size(); ++t) {
      freq[t][h.allocs[t]] += 1.0;
      ++reach[t];
    }
  }

  const int bar = 14, gap = 18, left = 60, base = 270, plot = 220;
  const int group = types * bar;
  const int width = left + stages * (group + gap) + 40;
  const int height = base + 50;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" "
         "font-size=\"15\">Allocation frequency by stage ("
      << plays.size() << " episodes)</text>\n";
  // Y axis with a handful of reference lines.
  for (int tick = 0; tick <= 4; ++tick) {
    const double frac = tick / 4.0;
    const int y = base - static_cast<int>(frac * plot);
    svg << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\""
        << width - 20 << "\" y2=\"" << y
        << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << left - 34 << "\" y=\"" << y + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << frac
        << "</text>\n";
  }
  for (int t = 0; t < stages; ++t) {
    const int x0 = left + t * (group + gap);
    for (int v = 0; v < types; ++v) {
      const double f = reach[t] > 0 ? freq[t][v] / reach[t] : 0.0;
      const int h = static_cast<int>(f * plot);
      svg << "<rect x=\"" << x0 + v * bar << "\" y=\"" << base - h
          << "\" width=\"" << bar - 2 << "\" height=\"" << h << "\" fill=\""
          << color_of(v) << "\"/>\n";
    }
    svg << "<text x=\"" << x0 << "\" y=\"" << base + 16
        << "\" font-family=\"sans-serif\" font-size=\"11\">t=" << t
        << "</text>\n";
  }
  for (int v = 0; v < types; ++v) {
    const int y = 40 + v * 16;
    svg << "<rect x=\"" << width - 130 << "\" y=\"" << y - 10
        << "\" width=\"12\" height=\"12\" fill=\"" << color_of(v) << "\"/>\n";
    svg << "<text x=\"" << width - 112 << "\" y=\"" << y
        << "\" font-family=\"sans-serif\" font-size=\"11\">alloc " << v
        << " (node " << inst.assets[v] << ")</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

// Realized trajectories of one type on the grid: segment width scales with
// traversal count.
std::string trajectory_svg(const DragInstance& inst, int theta,
                           const std::vector<History>& plays,
                           const std::vector<int>& types_of) {
  const GridSpec& grid = *inst.grid;
  const int cell = 48, margin = 24;
  const int width = margin * 2 + grid.cols * cell;
  const int height = margin * 2 + grid.rows * cell + 30;
  const auto cx = [&](int node) {
    return margin + (node % grid.cols) * cell + cell / 2;
  };
  const auto cy = [&](int node) {
    return margin + 30 + (node / grid.cols) * cell + cell / 2;
  };

  std::map<std::pair<int, int>, int> segments;
  int episodes = 0;
  for (size_t i = 0; i < plays.size(); ++i) {
    if (types_of[i] != theta) continue;
    ++episodes;
    const auto& states = plays[i].states;
    for (size_t k = 0; k + 1 < states.size(); ++k) {
      if (states[k] != states[k + 1]) {
        ++segments[{states[k], states[k + 1]}];
      }
    }
  }
  int peak = 1;
  for (const auto& [key, count] : segments) peak = std::max(peak, count);

  std::vector<uint8_t> blocked(inst.graph.num_nodes, 0);
  for (int s : grid.obstacles) blocked[s] = 1;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << margin << "\" y=\"22\" font-family=\"sans-serif\" "
         "font-size=\"15\">Trajectories, true asset " << theta << " (node "
      << inst.assets[theta] << ", " << episodes << " episodes)</text>\n";
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      const int node = r * grid.cols + c;
      svg << "<rect x=\"" << margin + c * cell << "\" y=\""
          << margin + 30 + r * cell << "\" width=\"" << cell
          << "\" height=\"" << cell << "\" fill=\""
          << (blocked[node] ? "#555" : "none")
          << "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
    }
  }
  for (size_t v = 0; v < inst.assets.size(); ++v) {
    const int node = inst.assets[v];
    svg << "<rect x=\"" << cx(node) - cell / 2 + 3 << "\" y=\""
        << cy(node) - cell / 2 + 3 << "\" width=\"" << cell - 6
        << "\" height=\"" << cell - 6 << "\" fill=\""
        << (static_cast<int>(v) == theta ? "#ffe9b3" : "none")
        << "\" stroke=\"#d4a017\" stroke-width=\"3\"/>\n";
  }
  for (const auto& [key, count] : segments) {
    const double w = 1.0 + 6.0 * count / peak;
    svg << "<line x1=\"" << cx(key.first) << "\" y1=\"" << cy(key.first)
        << "\" x2=\"" << cx(key.second) << "\" y2=\"" << cy(key.second)
        << "\" stroke=\"" << color_of(theta) << "\" stroke-width=\"" << w
        << "\" stroke-opacity=\"0.7\" stroke-linecap=\"round\"/>\n";
  }
  svg << "<circle cx=\"" << cx(inst.s0) << "\" cy=\"" << cy(inst.s0)
      << "\" r=\"6\" fill=\"#333\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

std::vector<std::string> write_rollout_svgs(const DragInstance& instance,
                                            const RolloutResult& result,
                                            const std::string& directory) {
  if (result.log.empty()) {
    throw DragError(ErrorCode::kUnsupported,
                    "plots need a rollout recorded with trajectory logging");
  }
  std::vector<History> plays;
  std::vector<int> types_of;
  plays.reserve(result.log.size());
  types_of.reserve(result.log.size());
  for (const RolloutEpisode& ep : result.log) {
    plays.push_back(decode_history(ep.history));
    types_of.push_back(ep.theta);
  }

  const std::filesystem::path dir(directory);
  std::filesystem::create_directories(dir);

  std::vector<std::string> names;
  if (instance.grid) {
    for (size_t t = 0; t < instance.assets.size(); ++t) {
      const std::string name =
          "trajectory_theta" + std::to_string(t) + ".svg";
      save(dir / name,
           trajectory_svg(instance, static_cast<int>(t), plays, types_of));
      names.push_back(name);
    }
  }
  save(dir / "allocations.svg", allocation_svg(instance, plays));
  names.push_back("allocations.svg");
  return names;
}

}  // namespace drag::eval
