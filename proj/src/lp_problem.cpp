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

#include <cmath>
#include <stdexcept>
#include <utility>

#include "drag/lp_core.h"

namespace drag::lp {

namespace {
void require(bool cond, const std::string& msg) {
  if (!cond) throw std::logic_error("lp: " + msg);
}
}  // namespace

int LPProblem::add_variable(const std::string& name, double lb, double ub,
                            double objective) {
  require(!sealed_, "add_variable after seal");
  require(!name.empty(), "empty variable name");
  require(!(lb > ub), "variable '" + name + "' has lb > ub");
  require(!std::isnan(lb) && !std::isnan(ub) && std::isfinite(objective),
          "non-finite data for variable '" + name + "'");
  require(name_index_.emplace(name, num_variables()).second,
          "duplicate variable name '" + name + "'");
  names_.push_back(name);
  lb_.push_back(lb);
  ub_.push_back(ub);
  obj_.push_back(objective);
  return static_cast<int>(names_.size()) - 1;
}

int LPProblem::add_constraint(const std::string& name, Relation rel,
                              double rhs) {
  require(!sealed_, "add_constraint after seal");
  require(!name.empty(), "empty constraint name");
  require(std::isfinite(rhs), "non-finite rhs for constraint '" + name + "'");
  require(row_name_index_.emplace(name, num_constraints()).second,
          "duplicate constraint name '" + name + "'");
  row_names_.push_back(name);
  rel_.push_back(rel);
  rhs_.push_back(rhs);
  return static_cast<int>(row_names_.size()) - 1;
}

void LPProblem::add_coefficient(int row, int col, double value) {
  require(!sealed_, "add_coefficient after seal");
  require(row >= 0 && row < num_constraints(), "coefficient row out of range");
  require(col >= 0 && col < num_variables(), "coefficient column out of range");
  require(std::isfinite(value), "non-finite coefficient");
  // Duplicate (row, col) entries are ambiguous; reject at insertion so the
  // offending call site is identifiable.
  const int64_t key = (static_cast<int64_t>(row) << 32) | col;
  require(entry_keys_.insert(key).second, "duplicate entry at row " +
                                              row_names_[row] + ", column " +
                                              names_[col]);
  entry_row_.push_back(row);
  cols_.push_back(col);
  values_.push_back(value);
}

void LPProblem::set_objective_sense(Sense sense) {
  require(!sealed_, "set_objective_sense after seal");
  sense_ = sense;
}

void LPProblem::set_objective_coefficient(int col, double value) {
  require(!sealed_, "set_objective_coefficient after seal");
  require(col >= 0 && col < num_variables(), "objective column out of range");
  require(std::isfinite(value), "non-finite objective coefficient");
  obj_[col] = value;
}

void LPProblem::set_rhs(int row, double rhs) {
  require(!sealed_, "set_rhs after seal");
  require(row >= 0 && row < num_constraints(), "rhs row out of range");
  require(std::isfinite(rhs), "non-finite rhs");
  rhs_[row] = rhs;
}

void LPProblem::seal() {
  require(!sealed_, "seal called twice");
  const int m = num_constraints();
  const int64_t nnz = static_cast<int64_t>(values_.size());

  // Stable counting sort by row keeps insertion order inside each row.
  std::vector<int64_t> count(m + 1, 0);
  for (int64_t k = 0; k < nnz; ++k) count[entry_row_[k] + 1]++;
  for (int i = 0; i < m; ++i) count[i + 1] += count[i];
  row_begin_ = count;
  std::vector<int32_t> sorted_cols(nnz);
  std::vector<double> sorted_values(nnz);
  std::vector<int64_t> cursor(row_begin_.begin(), row_begin_.end() - 1);
  for (int64_t k = 0; k < nnz; ++k) {
    const int64_t at = cursor[entry_row_[k]]++;
    sorted_cols[at] = cols_[k];
    sorted_values[at] = values_[k];
  }
  cols_ = std::move(sorted_cols);
  values_ = std::move(sorted_values);
  entry_row_.clear();
  entry_row_.shrink_to_fit();
  entry_keys_.clear();
  sealed_ = true;
}

int LPProblem::variable_index(const std::string& name) const {
  auto it = name_index_.find(name);
  return it == name_index_.end() ? -1 : it->second;
}

int LPProblem::constraint_index(const std::string& name) const {
  auto it = row_name_index_.find(name);
  return it == row_name_index_.end() ? -1 : it->second;
}

double LPProblem::objective_value(const std::vector<double>& x) const {
  require(x.size() == names_.size(), "objective_value size mismatch");
  double total = 0.0;
  for (size_t j = 0; j < x.size(); ++j) total += obj_[j] * x[j];
  return total;
}

}  // namespace drag::lp
