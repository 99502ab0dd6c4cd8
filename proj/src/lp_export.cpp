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
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "drag/game_model.h"
#include "drag/lp_core.h"

namespace drag::lp {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string pad(const std::string& s, size_t width) {
  if (s.size() >= width) return s + " ";
  return s + std::string(width - s.size(), ' ');
}

std::string sanitize(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  for (char ch : name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) ||
                    ch == '_' || ch == '.';
    out.push_back(ok ? ch : '_');
  }
  return out;
}

// Column-major gather of the row-major entries, rows ascending per column.
std::vector<std::vector<std::pair<int, double>>> columns_of(
    const LPProblem& p) {
  std::vector<std::vector<std::pair<int, double>>> cols(p.num_variables());
  const auto& rb = p.row_begin();
  const auto& rc = p.row_col();
  const auto& rv = p.row_value();
  for (int i = 0; i < p.num_constraints(); ++i) {
    for (int64_t k = rb[i]; k < rb[i + 1]; ++k) {
      cols[rc[k]].emplace_back(i, rv[k]);
    }
  }
  return cols;
}

std::string export_mps(const LPProblem& p) {
  std::ostringstream out;
  out << "NAME          DRAG\n";
  out << "OBJSENSE\n";
  out << (p.sense() == Sense::kMaximize ? "    MAX\n" : "    MIN\n");
  out << "ROWS\n";
  out << " N  OBJ\n";
  for (int i = 0; i < p.num_constraints(); ++i) {
    char tag = 'L';
    if (p.relation(i) == Relation::kGe) tag = 'G';
    if (p.relation(i) == Relation::kEq) tag = 'E';
    out << ' ' << tag << "  c" << i << '\n';
  }
  out << "COLUMNS\n";
  const auto cols = columns_of(p);
  for (int j = 0; j < p.num_variables(); ++j) {
    const std::string name = "x" + std::to_string(j);
    const double cj = p.objective_coefficient(j);
    // A column must appear in the section to exist; emit a zero objective
    // entry when it has no other coefficients.
    if (cj != 0.0 || cols[j].empty()) {
      out << "    " << pad(name, 10) << pad("OBJ", 10) << fmt(cj) << '\n';
    }
    for (const auto& [row, value] : cols[j]) {
      out << "    " << pad(name, 10) << pad("c" + std::to_string(row), 10)
          << fmt(value) << '\n';
    }
  }
  out << "RHS\n";
  for (int i = 0; i < p.num_constraints(); ++i) {
    if (p.rhs(i) == 0.0) continue;
    out << "    " << pad("RHS", 10) << pad("c" + std::to_string(i), 10)
        << fmt(p.rhs(i)) << '\n';
  }
  out << "BOUNDS\n";
  for (int j = 0; j < p.num_variables(); ++j) {
    const std::string name = "x" + std::to_string(j);
    const double lo = p.lower_bound(j), hi = p.upper_bound(j);
    if (lo == hi) {
      out << " FX " << pad("BND", 10) << pad(name, 10) << fmt(lo) << '\n';
      continue;
    }
    if (lo == -kInf && hi == kInf) {
      out << " FR " << pad("BND", 10) << name << '\n';
      continue;
    }
    if (lo == -kInf) {
      out << " MI " << pad("BND", 10) << name << '\n';
    } else if (lo != 0.0) {
      out << " LO " << pad("BND", 10) << pad(name, 10) << fmt(lo) << '\n';
    }
    if (hi < kInf) {
      out << " UP " << pad("BND", 10) << pad(name, 10) << fmt(hi) << '\n';
    }
  }
  out << "ENDATA\n";
  return out.str();
}

// One term of a linear expression in LP text form.
void append_term(std::ostringstream& out, bool first, double coef,
                 const std::string& name) {
  if (first) {
    if (coef == 1.0) {
      out << name;
    } else if (coef == -1.0) {
      out << "- " << name;
    } else {
      out << fmt(coef) << ' ' << name;
    }
    return;
  }
  const double mag = std::fabs(coef);
  out << (coef < 0.0 ? " - " : " + ");
  if (mag == 1.0) {
    out << name;
  } else {
    out << fmt(mag) << ' ' << name;
  }
}

std::string export_lp_text(const LPProblem& p) {
  std::vector<std::string> var_names(p.num_variables());
  std::vector<std::string> row_names(p.num_constraints());
  std::unordered_set<std::string> seen;
  for (int j = 0; j < p.num_variables(); ++j) {
    var_names[j] = sanitize(p.variable_name(j));
    if (!seen.insert(var_names[j]).second) {
      throw std::logic_error("lp: sanitized name collision '" + var_names[j] +
                             "'");
    }
  }
  for (int i = 0; i < p.num_constraints(); ++i) {
    row_names[i] = sanitize(p.constraint_name(i));
    if (!seen.insert(row_names[i]).second) {
      throw std::logic_error("lp: sanitized name collision '" + row_names[i] +
                             "'");
    }
  }

  std::ostringstream out;
  out << "\\ DRAG lp export\n";
  out << (p.sense() == Sense::kMaximize ? "Maximize\n" : "Minimize\n");
  out << " OBJ:";
  bool first = true;
  for (int j = 0; j < p.num_variables(); ++j) {
    const double cj = p.objective_coefficient(j);
    if (cj == 0.0) continue;
    if (first) out << ' ';
    append_term(out, first, cj, var_names[j]);
    first = false;
  }
  if (first && p.num_variables() > 0) out << " 0 " << var_names[0];
  out << '\n';
  out << "Subject To\n";
  const auto& rb = p.row_begin();
  const auto& rc = p.row_col();
  const auto& rv = p.row_value();
  for (int i = 0; i < p.num_constraints(); ++i) {
    out << ' ' << row_names[i] << ':';
    bool lead = true;
    for (int64_t k = rb[i]; k < rb[i + 1]; ++k) {
      if (lead) out << ' ';
      append_term(out, lead, rv[k], var_names[rc[k]]);
      lead = false;
    }
    if (lead) out << " 0 " << (p.num_variables() > 0 ? var_names[0] : "x");
    switch (p.relation(i)) {
      case Relation::kLe: out << " <= "; break;
      case Relation::kGe: out << " >= "; break;
      case Relation::kEq: out << " = "; break;
    }
    out << fmt(p.rhs(i)) << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < p.num_variables(); ++j) {
    const double lo = p.lower_bound(j), hi = p.upper_bound(j);
    if (lo == -kInf && hi == kInf) {
      out << ' ' << var_names[j] << " free\n";
    } else if (lo == hi) {
      out << ' ' << var_names[j] << " = " << fmt(lo) << '\n';
    } else if (lo == 0.0) {
      if (hi < kInf) out << ' ' << var_names[j] << " <= " << fmt(hi) << '\n';
    } else {
      out << ' ' << (lo == -kInf ? std::string("-infinity") : fmt(lo))
          << " <= " << var_names[j];
      if (hi < kInf) out << " <= " << fmt(hi);
      out << '\n';
    }
  }
  out << "End\n";
  return out.str();
}

int parse_canonical(const std::string& name, char prefix) {
  if (name.size() < 2 || name[0] != prefix) return -1;
  int value = 0;
  for (size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return -1;
    value = value * 10 + (name[i] - '0');
    if (value > 100000000) return -1;
  }
  return value;
}

}  // namespace

std::string export_lp(const LPProblem& problem, Format format) {
  if (!problem.sealed()) throw std::logic_error("lp: export requires seal()");
  return format == Format::kMps ? export_mps(problem)
                                : export_lp_text(problem);
}

LPSolution import_solution(const LPProblem& problem, const std::string& text,
                           const SolveOptions& options) {
  if (!problem.sealed()) throw std::logic_error("lp: import requires seal()");
  const int n = problem.num_variables();
  const int m = problem.num_constraints();
  std::vector<std::optional<double>> primal(n);
  std::vector<std::optional<double>> dual(m);
  bool any_dual = false;

  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name)) continue;  // Blank or comment-only line.
    double value = 0.0;
    std::string extra;
    if (!(fields >> value) || (fields >> extra)) {
      throw DragError(ErrorCode::kParseError,
                      "solution line " + std::to_string(lineno) +
                          ": expected 'name value'");
    }
    int col = problem.variable_index(name);
    if (col < 0) {
      const int canonical = parse_canonical(name, 'x');
      if (canonical >= 0 && canonical < n) col = canonical;
    }
    if (col >= 0) {
      primal[col] = value;
      continue;
    }
    int row = problem.constraint_index(name);
    if (row < 0) {
      const int canonical = parse_canonical(name, 'c');
      if (canonical >= 0 && canonical < m) row = canonical;
    }
    if (row >= 0) {
      dual[row] = value;
      any_dual = true;
      continue;
    }
    throw DragError(ErrorCode::kParseError,
                    "solution line " + std::to_string(lineno) +
                        ": unknown name '" + name + "'");
  }

  LPSolution out;
  out.status = Status::kOptimal;
  out.stats.pivot_rule = "imported";
  out.primal.resize(n);
  for (int j = 0; j < n; ++j) {
    if (!primal[j].has_value()) {
      throw DragError(ErrorCode::kParseError,
                      "solution does not cover variable '" +
                          problem.variable_name(j) + "'");
    }
    out.primal[j] = *primal[j];
  }

  // Primal feasibility.
  for (int j = 0; j < n; ++j) {
    const double scale =
        1.0 + std::fabs(out.primal[j]);
    if (out.primal[j] < problem.lower_bound(j) - options.feas_tol * scale ||
        out.primal[j] > problem.upper_bound(j) + options.feas_tol * scale) {
      throw DragError(ErrorCode::kInvalidPlan,
                      "imported value for '" + problem.variable_name(j) +
                          "' violates its bounds");
    }
  }
  const auto& rb = problem.row_begin();
  const auto& rc = problem.row_col();
  const auto& rv = problem.row_value();
  std::vector<double> activity(m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int64_t k = rb[i]; k < rb[i + 1]; ++k) {
      activity[i] += rv[k] * out.primal[rc[k]];
    }
    const double tol = options.feas_tol * (1.0 + std::fabs(problem.rhs(i)));
    const double diff = activity[i] - problem.rhs(i);
    const bool bad = (problem.relation(i) == Relation::kLe && diff > tol) ||
                     (problem.relation(i) == Relation::kGe && diff < -tol) ||
                     (problem.relation(i) == Relation::kEq &&
                      std::fabs(diff) > tol);
    if (bad) {
      throw DragError(ErrorCode::kInvalidPlan,
                      "imported point violates constraint '" +
                          problem.constraint_name(i) + "'");
    }
  }
  out.objective = problem.objective_value(out.primal);

  if (any_dual) {
    out.dual.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
      if (dual[i].has_value()) out.dual[i] = *dual[i];
    }
    const bool maximize = problem.sense() == Sense::kMaximize;
    const double dtol = options.opt_tol + 1e-7;
    for (int i = 0; i < m; ++i) {
      const double y = out.dual[i];
      // Shadow-price signs, then complementary slackness.
      const bool sign_bad =
          (problem.relation(i) == Relation::kLe && (maximize ? y < -dtol
                                                             : y > dtol)) ||
          (problem.relation(i) == Relation::kGe && (maximize ? y > dtol
                                                             : y < -dtol));
      if (sign_bad) {
        throw DragError(ErrorCode::kInvalidPlan,
                        "imported dual for '" + problem.constraint_name(i) +
                            "' has the wrong sign");
      }
      const double slack_tol =
          (options.feas_tol + 1e-6) * (1.0 + std::fabs(problem.rhs(i)));
      if (std::fabs(y) > dtol && problem.relation(i) != Relation::kEq &&
          std::fabs(activity[i] - problem.rhs(i)) > slack_tol) {
        throw DragError(ErrorCode::kInvalidPlan,
                        "imported dual for '" + problem.constraint_name(i) +
                            "' is active on a slack row");
      }
    }
    // Reduced-cost stationarity at the imported point.
    std::vector<double> reduced(n);
    for (int j = 0; j < n; ++j) reduced[j] = problem.objective_coefficient(j);
    for (int i = 0; i < m; ++i) {
      if (out.dual[i] == 0.0) continue;
      for (int64_t k = rb[i]; k < rb[i + 1]; ++k) {
        reduced[rc[k]] -= out.dual[i] * rv[k];
      }
    }
    for (int j = 0; j < n; ++j) {
      const double tol =
          dtol * (1.0 + std::fabs(problem.objective_coefficient(j)));
      const double span_tol =
          options.feas_tol * (1.0 + std::fabs(out.primal[j])) + 1e-9;
      const bool at_lower =
          out.primal[j] <= problem.lower_bound(j) + span_tol;
      const bool at_upper =
          out.primal[j] >= problem.upper_bound(j) - span_tol;
      const double d = maximize ? -reduced[j] : reduced[j];
      // In minimization form: d >= 0 at lower, d <= 0 at upper, 0 interior.
      const bool bad = (!at_lower && !at_upper && std::fabs(d) > tol) ||
                       (at_lower && !at_upper && d < -tol) ||
                       (at_upper && !at_lower && d > tol);
      if (bad) {
        throw DragError(ErrorCode::kInvalidPlan,
                        "imported duals fail stationarity at variable '" +
                            problem.variable_name(j) + "'");
      }
    }
    out.reduced_costs = std::move(reduced);
    double lagrangian = 0.0;
    for (int i = 0; i < m; ++i) lagrangian += out.dual[i] * problem.rhs(i);
    for (int j = 0; j < n; ++j) {
      lagrangian += out.reduced_costs[j] * out.primal[j];
    }
    if (std::fabs(lagrangian - out.objective) >
        options.gap_tol * (1.0 + std::fabs(out.objective)) + 1e-7) {
      throw DragError(ErrorCode::kInvalidPlan,
                      "imported primal/dual pair has a duality gap");
    }
  }
  return out;
}

}  // namespace drag::lp
