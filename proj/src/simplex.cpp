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
//
// Bounded-variable primal simplex over a product-form basis inverse.
// Refactorizations go through a sparse LU of the basis matrix; between
// refactorizations the inverse is extended with eta vectors from each pivot.
// Phase 1 minimizes the total bound violation of the basic variables with a
// composite ratio test that lets infeasible basics travel to their violated
// bound. Pricing is most-negative reduced cost with lowest-index ties,
// switching to Bland's rule after a run of degenerate pivots.
//
// Degeneracy is handled with expanding working bounds: each pivot may step
// a sliver past blocking bounds, the allowance grows per pivot and resets
// at every refactorization, and a strictly positive minimum step is forced,
// so the working objective strictly decreases and cycling is impossible.
// The ratio test is the two-pass kind: the first pass fixes the step limit
// under the expanded bounds, the second picks the best-conditioned pivot
// inside that limit, preferring pivots sized against the column's largest
// entry so degenerate bases do not accumulate near-singular pivots. If the
// basis still goes numerically bad the solve restarts once from scratch
// under Bland's rule with frequent refactorization before giving up.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "drag/game_model.h"
#include "drag/lp_core.h"

namespace drag::lp {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kRelPivotTol = 1e-6;  // Versus the column's largest entry.
constexpr double kDropTol = 1e-12;
constexpr double kDegenerateStep = 1e-12;
constexpr int kDegenerateRun = 40;

enum class VStat : uint8_t { kBasic, kAtLower, kAtUpper, kFreeZero };

struct Eta {
  int32_t row = 0;                // Basis position of the pivot.
  double pivot = 1.0;             // Entering column value at that position.
  std::vector<int32_t> idx;       // Remaining support of the column.
  std::vector<double> val;
};

// Internal signal: the basis went numerically bad and the solve should be
// retried once under the conservative settings.
struct RestartSignal {
  const char* what;
};

}  // namespace

class SimplexSolver {
 public:
  SimplexSolver(const LPProblem& p, const SolveOptions& opts)
      : p_(p), opts_(opts) {
    if (!p.sealed()) throw std::logic_error("lp: solve requires seal()");
    if (opts_.refactor_interval < 1) opts_.refactor_interval = 1;
    m_ = p.num_constraints();
    n_ = p.num_variables();
    ncols_ = n_ + m_;
    flip_ = p.sense() == Sense::kMaximize ? -1.0 : 1.0;
    build_columns();
    if (opts_.iteration_cap <= 0) {
      opts_.iteration_cap = 10000 + 20LL * (m_ + ncols_);
    }
  }

  LPSolution solve();

 private:
  LPSolution run();
  [[noreturn]] void numerical_failure(const char* what);
  void build_columns();
  void reset_basis();
  void refactorize();
  void ftran(std::vector<double>& v) const;
  void btran(std::vector<double>& v) const;
  void recompute_basics();
  double violation(int col) const;
  // -1 below its lower bound, +1 above its upper bound, 0 feasible, all
  // relative to the feasibility tolerance. Pricing, the ratio test, and the
  // phase switch must share this classification: a basic the pricing cost
  // treats as feasible has to block in the ratio test, or steps could drag
  // it into deep violation without the reduced cost ever noticing.
  int viol_class(int col) const;
  bool any_violation() const;
  // Returns the entering column (or -1) and fills dir/dj for it.
  int price(bool phase1, bool bland, int* dir, double* dj);
  LPSolution finish_optimal();
  LPSolution finish_infeasible();
  LPSolution finish_unbounded(int enter, int dir,
                              const std::vector<double>& alpha);
  void fill_stats(LPSolution* out) const;

  const LPProblem& p_;
  SolveOptions opts_;
  int m_ = 0, n_ = 0, ncols_ = 0;
  double flip_ = 1.0;
  bool restarting_ = false;

  // Expanding working-bound state; reset alongside each refactorization.
  double expand_base_ = 0.0;
  double expand_inc_ = 0.0;
  double expand_used_ = 0.0;

  // Column-major [A | I] with internal (minimization) costs.
  std::vector<int64_t> col_begin_;
  std::vector<int32_t> col_row_;
  std::vector<double> col_val_;
  std::vector<double> cost_, lb_, ub_, b_;

  std::vector<int32_t> basis_;      // Basis position -> column.
  std::vector<int32_t> basic_pos_;  // Column -> basis position or -1.
  std::vector<VStat> vstat_;
  std::vector<double> x_;

  // transpose() is a non-const accessor in Eigen's SparseLU, so the solves
  // in the const translation helpers need a mutable factorization handle.
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  std::vector<Eta> etas_;
  SolverStats stats_;
  std::chrono::steady_clock::time_point start_;
};

void SimplexSolver::build_columns() {
  const auto& rb = p_.row_begin();
  const auto& rc = p_.row_col();
  const auto& rv = p_.row_value();
  std::vector<int64_t> count(ncols_ + 1, 0);
  for (size_t k = 0; k < rc.size(); ++k) count[rc[k] + 1]++;
  for (int i = 0; i < m_; ++i) count[n_ + i + 1]++;  // Slack singleton.
  for (int j = 0; j < ncols_; ++j) count[j + 1] += count[j];
  col_begin_ = count;
  col_row_.resize(col_begin_[ncols_]);
  col_val_.resize(col_begin_[ncols_]);
  std::vector<int64_t> cursor(col_begin_.begin(), col_begin_.end() - 1);
  for (int i = 0; i < m_; ++i) {
    for (int64_t k = rb[i]; k < rb[i + 1]; ++k) {
      const int64_t at = cursor[rc[k]]++;
      col_row_[at] = i;
      col_val_[at] = rv[k];
    }
  }
  for (int i = 0; i < m_; ++i) {
    const int64_t at = cursor[n_ + i]++;
    col_row_[at] = i;
    col_val_[at] = 1.0;
  }

  cost_.assign(ncols_, 0.0);
  lb_.resize(ncols_);
  ub_.resize(ncols_);
  b_.resize(m_);
  for (int j = 0; j < n_; ++j) {
    cost_[j] = flip_ * p_.objective_coefficient(j);
    lb_[j] = p_.lower_bound(j);
    ub_[j] = p_.upper_bound(j);
  }
  for (int i = 0; i < m_; ++i) {
    b_[i] = p_.rhs(i);
    switch (p_.relation(i)) {
      case Relation::kLe:
        lb_[n_ + i] = 0.0;
        ub_[n_ + i] = kInf;
        break;
      case Relation::kGe:
        lb_[n_ + i] = -kInf;
        ub_[n_ + i] = 0.0;
        break;
      case Relation::kEq:
        lb_[n_ + i] = 0.0;
        ub_[n_ + i] = 0.0;
        break;
    }
  }
}

void SimplexSolver::reset_basis() {
  basis_.resize(m_);
  for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
  if (static_cast<int>(opts_.basis_hint.size()) == m_) {
    std::vector<uint8_t> used(ncols_, 0);
    bool ok = true;
    for (int i = 0; i < m_ && ok; ++i) {
      const int j = opts_.basis_hint[i];
      if (j < -1 || j >= ncols_) ok = false;
      const int col = j < 0 ? n_ + i : j;
      if (ok && used[col]) ok = false;
      used[col] = 1;
      basis_[i] = col;
    }
    if (ok) {
      try {
        refactorize();
      } catch (const RestartSignal&) {
        ok = false;
      } catch (const DragError&) {
        ok = false;
      }
    }
    if (!ok) {
      for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
      refactorize();
    }
  } else {
    refactorize();
  }

  basic_pos_.assign(ncols_, -1);
  vstat_.assign(ncols_, VStat::kAtLower);
  x_.assign(ncols_, 0.0);
  for (int i = 0; i < m_; ++i) basic_pos_[basis_[i]] = i;
  for (int j = 0; j < ncols_; ++j) {
    if (basic_pos_[j] >= 0) {
      vstat_[j] = VStat::kBasic;
    } else if (lb_[j] > -kInf) {
      vstat_[j] = VStat::kAtLower;
      x_[j] = lb_[j];
    } else if (ub_[j] < kInf) {
      vstat_[j] = VStat::kAtUpper;
      x_[j] = ub_[j];
    } else {
      vstat_[j] = VStat::kFreeZero;
      x_[j] = 0.0;
    }
  }
  recompute_basics();
}

void SimplexSolver::refactorize() {
  etas_.clear();
  if (m_ == 0) return;
  Eigen::SparseMatrix<double> basis_matrix(m_, m_);
  std::vector<Eigen::Triplet<double>> trips;
  for (int i = 0; i < m_; ++i) {
    const int j = basis_[i];
    for (int64_t k = col_begin_[j]; k < col_begin_[j + 1]; ++k) {
      trips.emplace_back(col_row_[k], i, col_val_[k]);
    }
  }
  basis_matrix.setFromTriplets(trips.begin(), trips.end());
  basis_matrix.makeCompressed();
  lu_.compute(basis_matrix);
  if (lu_.info() != Eigen::Success) {
    numerical_failure("singular basis during refactorization");
  }
  stats_.refactorizations++;
}

void SimplexSolver::numerical_failure(const char* what) {
  if (!restarting_) throw RestartSignal{what};
  throw DragError(ErrorCode::kSolverFailure, what);
}

void SimplexSolver::ftran(std::vector<double>& v) const {
  if (m_ == 0) return;
  Eigen::Map<Eigen::VectorXd> mapped(v.data(), m_);
  Eigen::VectorXd solved = lu_.solve(mapped);
  mapped = solved;
  for (const Eta& e : etas_) {
    const double t = v[e.row] / e.pivot;
    v[e.row] = t;
    if (t == 0.0) continue;
    for (size_t k = 0; k < e.idx.size(); ++k) v[e.idx[k]] -= e.val[k] * t;
  }
}

void SimplexSolver::btran(std::vector<double>& v) const {
  if (m_ == 0) return;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double t = v[it->row];
    for (size_t k = 0; k < it->idx.size(); ++k) {
      t -= it->val[k] * v[it->idx[k]];
    }
    v[it->row] = t / it->pivot;
  }
  Eigen::Map<Eigen::VectorXd> mapped(v.data(), m_);
  Eigen::VectorXd solved = lu_.transpose().solve(mapped);
  mapped = solved;
}

void SimplexSolver::recompute_basics() {
  if (m_ == 0) return;
  std::vector<double> rhs = b_;
  for (int j = 0; j < ncols_; ++j) {
    if (basic_pos_[j] >= 0 || x_[j] == 0.0) continue;
    for (int64_t k = col_begin_[j]; k < col_begin_[j + 1]; ++k) {
      rhs[col_row_[k]] -= col_val_[k] * x_[j];
    }
  }
  ftran(rhs);
  for (int i = 0; i < m_; ++i) x_[basis_[i]] = rhs[i];
  // One round of iterative refinement against the full system.
  std::vector<double> residual = b_;
  for (int j = 0; j < ncols_; ++j) {
    if (x_[j] == 0.0) continue;
    for (int64_t k = col_begin_[j]; k < col_begin_[j + 1]; ++k) {
      residual[col_row_[k]] -= col_val_[k] * x_[j];
    }
  }
  ftran(residual);
  for (int i = 0; i < m_; ++i) x_[basis_[i]] += residual[i];
}

double SimplexSolver::violation(int col) const {
  const double v = x_[col];
  if (v < lb_[col]) return lb_[col] - v;
  if (v > ub_[col]) return v - ub_[col];
  return 0.0;
}

int SimplexSolver::viol_class(int col) const {
  const double scale =
      1.0 + std::fabs(x_[col] < lb_[col] ? lb_[col] : ub_[col]);
  if (x_[col] < lb_[col] - opts_.feas_tol * scale) return -1;
  if (x_[col] > ub_[col] + opts_.feas_tol * scale) return 1;
  return 0;
}

bool SimplexSolver::any_violation() const {
  for (int i = 0; i < m_; ++i) {
    if (viol_class(basis_[i]) != 0) return true;
  }
  return false;
}

int SimplexSolver::price(bool phase1, bool bland, int* dir, double* dj) {
  std::vector<double> y(m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    y[i] = phase1 ? static_cast<double>(viol_class(basis_[i]))
                  : cost_[basis_[i]];
  }
  btran(y);

  int best = -1, best_dir = 0;
  double best_score = 0.0, best_dj = 0.0;
  for (int j = 0; j < ncols_; ++j) {
    if (basic_pos_[j] >= 0) continue;
    if (ub_[j] - lb_[j] <= 0.0) continue;  // Fixed columns cannot move.
    double d = phase1 ? 0.0 : cost_[j];
    for (int64_t k = col_begin_[j]; k < col_begin_[j + 1]; ++k) {
      d -= col_val_[k] * y[col_row_[k]];
    }
    int candidate_dir = 0;
    switch (vstat_[j]) {
      case VStat::kAtLower:
        if (d < -opts_.opt_tol) candidate_dir = 1;
        break;
      case VStat::kAtUpper:
        if (d > opts_.opt_tol) candidate_dir = -1;
        break;
      case VStat::kFreeZero:
        if (d < -opts_.opt_tol) candidate_dir = 1;
        if (d > opts_.opt_tol) candidate_dir = -1;
        break;
      case VStat::kBasic:
        break;
    }
    if (candidate_dir == 0) continue;
    if (bland) {
      *dir = candidate_dir;
      *dj = d;
      return j;  // Lowest eligible index.
    }
    const double score = std::fabs(d);
    if (score > best_score + 1e-15) {
      best = j;
      best_dir = candidate_dir;
      best_score = score;
      best_dj = d;
    }
  }
  *dir = best_dir;
  *dj = best_dj;
  return best;
}

LPSolution SimplexSolver::solve() {
  start_ = std::chrono::steady_clock::now();
  try {
    stats_.pivot_rule = "dantzig+bland";
    return run();
  } catch (const RestartSignal&) {
    restarting_ = true;
    stats_ = SolverStats{};
    stats_.pivot_rule = "bland-restart";
    opts_.refactor_interval = 8;
    return run();
  }
}

LPSolution SimplexSolver::run() {
  expand_base_ = 0.5 * opts_.feas_tol;
  expand_inc_ = 0.49 * opts_.feas_tol / opts_.refactor_interval;
  expand_used_ = expand_base_;
  reset_basis();

  int consecutive_degenerate = 0;
  bool bland = restarting_;
  while (true) {
    if (stats_.iterations >= opts_.iteration_cap) {
      LPSolution out;
      out.status = Status::kIterationLimit;
      out.primal.assign(x_.begin(), x_.begin() + n_);
      fill_stats(&out);
      return out;
    }
    const bool phase1 = any_violation();
    int dir = 0;
    double dj = 0.0;
    const int enter = price(phase1, bland, &dir, &dj);
    if (enter < 0) {
      if (phase1) return finish_infeasible();
      return finish_optimal();
    }

    std::vector<double> alpha(m_, 0.0);
    for (int64_t k = col_begin_[enter]; k < col_begin_[enter + 1]; ++k) {
      alpha[col_row_[k]] = col_val_[k];
    }
    ftran(alpha);

    // Two-pass ratio test. Feasible basics block at the bound they travel
    // toward; in phase 1, basics beyond a bound block when they reach it.
    // Pass 1 sets the step limit with every blocking bound relaxed by the
    // feasibility tolerance; pass 2 picks the largest pivot whose strict
    // ratio fits inside that limit, so degenerate ties resolve toward the
    // numerically safest column.
    const double span = ub_[enter] - lb_[enter];  // kInf for free columns.
    const auto blocking_gap = [&](int i, double delta, bool* to_upper) {
      const int j = basis_[i];
      const double xj = x_[j];
      *to_upper = false;
      // Classification must match the phase-1 pricing costs exactly. A basic
      // within tolerance of a bound blocks like a feasible one (with a
      // possibly slightly negative gap), never as a violated one, or it
      // could be dragged into real violation behind the reduced cost's back.
      const int vc = phase1 ? viol_class(j) : 0;
      if (vc < 0) {
        if (delta < 0.0) return lb_[j] - xj;
      } else if (vc > 0) {
        if (delta > 0.0) {
          *to_upper = true;
          return xj - ub_[j];
        }
      } else if (delta > 0.0) {
        if (lb_[j] > -kInf) return xj - lb_[j];
      } else {
        if (ub_[j] < kInf) {
          *to_upper = true;
          return ub_[j] - xj;
        }
      }
      return kInf;
    };

    double amax = 0.0;
    for (int i = 0; i < m_; ++i) {
      amax = std::max(amax, std::fabs(alpha[i]));
    }
    const double good_pivot = std::max(kPivotTol, kRelPivotTol * amax);

    const double allowance = expand_used_ + expand_inc_;
    double limit = span;  // The entering column's own flip caps the step.
    for (int i = 0; i < m_; ++i) {
      const double mag = std::fabs(alpha[i]);
      if (mag <= kPivotTol) continue;
      bool to_upper = false;
      const double gap = blocking_gap(i, dir * alpha[i], &to_upper);
      if (gap == kInf) continue;
      const double t = (std::max(gap, 0.0) + allowance) / mag;
      if (t < limit) limit = t;
    }

    // Preferred tier: pivots sized against the column's largest entry.
    // Pivots down at the absolute floor are a last resort; accepting one
    // when a healthy pivot blocks is what erodes the basis.
    double best_t = kInf, best_mag = 0.0;
    int leave_pos = -1;
    bool leave_to_upper = false;
    for (int tier = 0; tier < 2 && leave_pos < 0; ++tier) {
      const double floor = tier == 0 ? good_pivot : kPivotTol;
      for (int i = 0; i < m_; ++i) {
        const double mag = std::fabs(alpha[i]);
        if (mag <= floor) continue;
        bool to_upper = false;
        const double gap = blocking_gap(i, dir * alpha[i], &to_upper);
        if (gap == kInf) continue;
        const double t = std::max(gap, 0.0) / mag;
        if (t > limit) continue;
        bool take;
        if (leave_pos < 0) {
          take = true;
        } else if (bland) {
          take = basis_[i] < basis_[leave_pos];
        } else {
          take = mag > best_mag + 1e-15 ||
                 (mag > best_mag - 1e-15 && basis_[i] < basis_[leave_pos]);
        }
        if (take) {
          best_t = t;
          best_mag = mag;
          leave_pos = i;
          leave_to_upper = to_upper;
        }
      }
      if (good_pivot <= kPivotTol) break;  // The tiers coincide.
    }

    stats_.iterations++;
    if (phase1) stats_.phase1_iterations++;

    if (leave_pos >= 0) {
      // Forced minimum step: strictly positive progress on every pivot. The
      // cap at the pass-1 limit keeps every blocking bound within its
      // allowance; the limit itself is at least allowance / amax, so the
      // step stays strictly positive and cycling remains impossible.
      best_t = std::min(std::max(best_t, expand_inc_ / best_mag), limit);
    }
    if (leave_pos < 0 || best_t >= span) {
      // No basic blocks before the entering column's own span.
      if (span == kInf) {
        if (phase1) {
          numerical_failure("unblocked infeasibility direction");
        }
        return finish_unbounded(enter, dir, alpha);
      }
      // Bound flip.
      for (int i = 0; i < m_; ++i) {
        if (alpha[i] != 0.0) x_[basis_[i]] -= dir * span * alpha[i];
      }
      vstat_[enter] =
          vstat_[enter] == VStat::kAtLower ? VStat::kAtUpper : VStat::kAtLower;
      x_[enter] = vstat_[enter] == VStat::kAtUpper ? ub_[enter] : lb_[enter];
      consecutive_degenerate = 0;
      bland = restarting_;
      continue;
    }

    // Pivot: entering moves by best_t, leaving snaps to its bound.
    const int leave = basis_[leave_pos];
    x_[enter] += dir * best_t;
    for (int i = 0; i < m_; ++i) {
      if (i != leave_pos && alpha[i] != 0.0) {
        x_[basis_[i]] -= dir * best_t * alpha[i];
      }
    }
    x_[leave] = leave_to_upper ? ub_[leave] : lb_[leave];
    vstat_[leave] = leave_to_upper ? VStat::kAtUpper : VStat::kAtLower;
    basic_pos_[leave] = -1;
    basis_[leave_pos] = enter;
    basic_pos_[enter] = leave_pos;
    vstat_[enter] = VStat::kBasic;

    Eta eta;
    eta.row = leave_pos;
    eta.pivot = alpha[leave_pos];
    for (int i = 0; i < m_; ++i) {
      if (i != leave_pos && std::fabs(alpha[i]) > kDropTol) {
        eta.idx.push_back(i);
        eta.val.push_back(alpha[i]);
      }
    }
    etas_.push_back(std::move(eta));
    expand_used_ += expand_inc_;
    if (static_cast<int>(etas_.size()) >= opts_.refactor_interval) {
      refactorize();
      recompute_basics();
      expand_used_ = expand_base_;
    }

    if (best_t <= kDegenerateStep) {
      stats_.degenerate_pivots++;
      if (++consecutive_degenerate >= kDegenerateRun) bland = true;
    } else {
      consecutive_degenerate = 0;
      bland = restarting_;
    }
  }
}

LPSolution SimplexSolver::finish_optimal() {
  refactorize();
  recompute_basics();

  std::vector<double> y(m_, 0.0);
  for (int i = 0; i < m_; ++i) y[i] = cost_[basis_[i]];
  btran(y);

  LPSolution out;
  out.status = Status::kOptimal;
  out.primal.assign(x_.begin(), x_.begin() + n_);
  out.objective = p_.objective_value(out.primal);
  out.dual.resize(m_);
  for (int i = 0; i < m_; ++i) out.dual[i] = flip_ * y[i];
  out.reduced_costs.resize(n_);
  for (int j = 0; j < n_; ++j) {
    double d = cost_[j];
    for (int64_t k = col_begin_[j]; k < col_begin_[j + 1]; ++k) {
      d -= col_val_[k] * y[col_row_[k]];
    }
    out.reduced_costs[j] = flip_ * d;
  }

  // Strong-duality audit; a failure here means the basis went numerically
  // bad, which must surface as an error rather than a wrong answer.
  double lagrangian = 0.0;
  for (int i = 0; i < m_; ++i) lagrangian += out.dual[i] * p_.rhs(i);
  for (int j = 0; j < n_; ++j) lagrangian += out.reduced_costs[j] * out.primal[j];
  if (std::fabs(lagrangian - out.objective) >
      opts_.gap_tol * (1.0 + std::fabs(out.objective))) {
    numerical_failure("duality gap exceeds tolerance after convergence");
  }
  fill_stats(&out);
  return out;
}

LPSolution SimplexSolver::finish_infeasible() {
  std::vector<double> y(m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    const int j = basis_[i];
    const double scale = 1.0 + std::fabs(x_[j] < lb_[j] ? lb_[j] : ub_[j]);
    if (x_[j] < lb_[j] - opts_.feas_tol * scale) {
      y[i] = -1.0;
    } else if (x_[j] > ub_[j] + opts_.feas_tol * scale) {
      y[i] = 1.0;
    }
  }
  btran(y);
  LPSolution out;
  out.status = Status::kInfeasible;
  out.primal.assign(x_.begin(), x_.begin() + n_);
  out.certificate = y;
  fill_stats(&out);
  return out;
}

LPSolution SimplexSolver::finish_unbounded(int enter, int dir,
                                           const std::vector<double>& alpha) {
  LPSolution out;
  out.status = Status::kUnbounded;
  out.primal.assign(x_.begin(), x_.begin() + n_);
  out.certificate.assign(n_, 0.0);
  if (enter < n_) out.certificate[enter] = dir;
  for (int i = 0; i < m_; ++i) {
    const int j = basis_[i];
    if (j < n_ && alpha[i] != 0.0) out.certificate[j] = -dir * alpha[i];
  }
  fill_stats(&out);
  return out;
}

void SimplexSolver::fill_stats(LPSolution* out) const {
  out->stats = stats_;
  out->stats.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
          .count();
}

LPSolution solve_lp(const LPProblem& problem, const SolveOptions& options) {
  SimplexSolver solver(problem, options);
  return solver.solve();
}

}  // namespace drag::lp
