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

#ifndef DRAG_LP_CORE_H_
#define DRAG_LP_CORE_H_

#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace drag::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLe, kEq, kGe };
enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };
enum class Format { kMps, kLpText };

// Immutable-after-seal LP container. Build with add_variable /
// add_constraint / add_coefficient, then seal() once; solving and export
// require a sealed problem. seal() validates index ranges, finiteness,
// bound ordering, and rejects duplicate (row, column) entries.
class LPProblem {
 public:
  int add_variable(const std::string& name, double lb, double ub,
                   double objective = 0.0);
  int add_constraint(const std::string& name, Relation rel, double rhs);
  void add_coefficient(int row, int col, double value);
  void set_objective_sense(Sense sense);
  void set_objective_coefficient(int col, double value);
  // Mutation hooks for sealed problems are deliberately absent; rebuild
  // instead. RHS edits are allowed pre-seal only.
  void set_rhs(int row, double rhs);
  void seal();

  bool sealed() const { return sealed_; }
  Sense sense() const { return sense_; }
  int num_variables() const { return static_cast<int>(names_.size()); }
  int num_constraints() const { return static_cast<int>(row_names_.size()); }
  int64_t num_entries() const { return static_cast<int64_t>(values_.size()); }
  const std::string& variable_name(int col) const { return names_[col]; }
  const std::string& constraint_name(int row) const { return row_names_[row]; }
  double lower_bound(int col) const { return lb_[col]; }
  double upper_bound(int col) const { return ub_[col]; }
  double objective_coefficient(int col) const { return obj_[col]; }
  Relation relation(int row) const { return rel_[row]; }
  double rhs(int row) const { return rhs_[row]; }
  int variable_index(const std::string& name) const;   // -1 if absent.
  int constraint_index(const std::string& name) const; // -1 if absent.

  // Row-major sparse view, entries in insertion order within each row.
  const std::vector<int64_t>& row_begin() const { return row_begin_; }
  const std::vector<int32_t>& row_col() const { return cols_; }
  const std::vector<double>& row_value() const { return values_; }

  // Objective value of a full primal vector (no feasibility check).
  double objective_value(const std::vector<double>& x) const;

 private:
  friend class SimplexSolver;
  bool sealed_ = false;
  Sense sense_ = Sense::kMinimize;
  std::vector<std::string> names_, row_names_;
  std::vector<double> lb_, ub_, obj_;
  std::vector<Relation> rel_;
  std::vector<double> rhs_;
  // Triplets during build; compressed row-major by seal().
  std::vector<int32_t> entry_row_, cols_;
  std::vector<double> values_;
  std::vector<int64_t> row_begin_;
  // O(1) uniqueness checks and name lookups.
  std::unordered_map<std::string, int> name_index_, row_name_index_;
  std::unordered_set<int64_t> entry_keys_;
};

struct SolveOptions {
  double feas_tol = 1e-9;       // Bound/row violation tolerance.
  double opt_tol = 1e-9;        // Reduced-cost (dual feasibility) tolerance.
  double gap_tol = 1e-7;        // Accepted |primal - dual| objective gap.
  int64_t iteration_cap = 0;    // 0: automatic (scales with problem size).
  int refactor_interval = 64;   // Basis refactorization period.
  // Optional starting basis: basis_hint[row] is the column made basic for
  // that row, or -1 for the row's slack. Out-of-range entries, duplicate
  // columns, or a singular hinted basis fall back to the all-slack start.
  std::vector<int> basis_hint;
};

struct SolverStats {
  int64_t iterations = 0;
  int64_t phase1_iterations = 0;
  int64_t degenerate_pivots = 0;
  int refactorizations = 0;
  std::string pivot_rule;       // "dantzig+bland" or "imported".
  double solve_seconds = 0.0;
};

struct LPSolution {
  Status status = Status::kIterationLimit;
  double objective = 0.0;
  std::vector<double> primal;         // Per variable.
  std::vector<double> dual;           // Per constraint (see below).
  std::vector<double> reduced_costs;  // Per variable.
  // Unbounded: improving primal ray. Infeasible: Farkas row multipliers.
  std::vector<double> certificate;
  SolverStats stats;
};

// Deterministic bounded-variable primal simplex. Pricing is most-negative
// reduced cost with lowest-index tie-breaks, falling back to Bland's rule
// after a run of degenerate pivots; ratio tests use expanding working
// bounds with a forced minimum step, so every pivot strictly improves the
// working objective and cycling is impossible. The pivot order is fixed,
// so two solves of the same sealed problem produce bit-identical
// solutions. Duals follow the shadow-price convention for the declared
// sense: for kMaximize, <= rows get duals >= 0; for kMinimize, >= rows get
// duals >= 0; equality-row duals are free. Strong duality holds at
// kOptimal: objective == sum(dual * rhs) + bound contributions of nonbasic
// variables (within gap_tol).
LPSolution solve_lp(const LPProblem& problem, const SolveOptions& options = {});

// Deterministic, byte-stable exports. MPS uses canonical short names
// (x<col>, c<row>, OBJ) so fields stay fixed-width friendly; the LP-text
// form uses the declared names (sanitized). Values print with %.17g.
std::string export_lp(const LPProblem& problem, Format format);

// Parses "name value" lines (blank lines and '#' comments ignored).
// Variable rows accept either declared or canonical x<col> names and must
// cover every variable; rows named c<row>/declared row names feed the dual
// vector (optional). Primal feasibility is validated against feas_tol, and
// when duals are present the objective gap is checked against gap_tol;
// violations throw DragError(kParseError or kInvalidPlan).
LPSolution import_solution(const LPProblem& problem, const std::string& text,
                           const SolveOptions& options = {});

}  // namespace drag::lp

#endif  // DRAG_LP_CORE_H_
