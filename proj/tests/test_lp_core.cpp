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
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "drag/game_model.h"
#include "drag/lp_core.h"
#include "support/oracles.h"
#include "support/suite.h"

namespace drag::lp {
namespace {

// Lagrangian identity at an optimal basis: c'x == y'b + d'x, where d are
// the reduced costs. Holds for both senses under the reported conventions.
void check_strong_duality(const LPProblem& p, const LPSolution& s,
                          double tol = 1e-7) {
  REQUIRE(s.status == Status::kOptimal);
  double yb = 0.0;
  for (int i = 0; i < p.num_constraints(); ++i) yb += s.dual[i] * p.rhs(i);
  double dx = 0.0;
  for (int j = 0; j < p.num_variables(); ++j) {
    dx += s.reduced_costs[j] * s.primal[j];
  }
  CHECK(std::fabs(s.objective - (yb + dx)) <=
        tol * (1.0 + std::fabs(s.objective)));
}

// Farkas check: with row multipliers y satisfying the relation sign
// conditions, every feasible point obeys y'Ax >= y'b, yet the best the
// bounds allow falls strictly short.
void check_farkas(const LPProblem& p, const std::vector<double>& y,
                  double tol = 1e-7) {
  REQUIRE(static_cast<int>(y.size()) == p.num_constraints());
  std::vector<double> s(p.num_variables(), 0.0);
  const auto& rb = p.row_begin();
  const auto& rc = p.row_col();
  const auto& rv = p.row_value();
  double yb = 0.0;
  for (int i = 0; i < p.num_constraints(); ++i) {
    yb += y[i] * p.rhs(i);
    if (p.relation(i) == Relation::kLe) CHECK(y[i] <= tol);
    if (p.relation(i) == Relation::kGe) CHECK(y[i] >= -tol);
    for (int64_t k = rb[i]; k < rb[i + 1]; ++k) s[rc[k]] += y[i] * rv[k];
  }
  double best = 0.0;
  for (int j = 0; j < p.num_variables(); ++j) {
    const double lo = p.lower_bound(j), hi = p.upper_bound(j);
    if (s[j] > tol) {
      REQUIRE(hi < kInf);
      best += s[j] * hi;
    } else if (s[j] < -tol) {
      REQUIRE(lo > -kInf);
      best += s[j] * lo;
    }
  }
  CHECK(yb - best > 1e-8);
}

// Ray check: the direction improves the objective while keeping every row
// and bound satisfiable for arbitrarily large steps.
void check_ray(const LPProblem& p, const std::vector<double>& dir,
               double tol = 1e-7) {
  REQUIRE(static_cast<int>(dir.size()) == p.num_variables());
  double obj_dir = 0.0;
  for (int j = 0; j < p.num_variables(); ++j) {
    obj_dir += p.objective_coefficient(j) * dir[j];
    if (p.lower_bound(j) > -kInf) CHECK(dir[j] >= -tol);
    if (p.upper_bound(j) < kInf) CHECK(dir[j] <= tol);
  }
  if (p.sense() == Sense::kMaximize) {
    CHECK(obj_dir > 1e-8);
  } else {
    CHECK(obj_dir < -1e-8);
  }
  const auto& rb = p.row_begin();
  const auto& rc = p.row_col();
  const auto& rv = p.row_value();
  for (int i = 0; i < p.num_constraints(); ++i) {
    double adir = 0.0;
    for (int64_t k = rb[i]; k < rb[i + 1]; ++k) adir += rv[k] * dir[rc[k]];
    switch (p.relation(i)) {
      case Relation::kLe: CHECK(adir <= tol); break;
      case Relation::kGe: CHECK(adir >= -tol); break;
      case Relation::kEq: CHECK(std::fabs(adir) <= tol); break;
    }
  }
}

void check_primal_feasible(const LPProblem& p, const std::vector<double>& x,
                           double tol = 1e-7) {
  for (int j = 0; j < p.num_variables(); ++j) {
    CHECK(x[j] >= p.lower_bound(j) - tol);
    CHECK(x[j] <= p.upper_bound(j) + tol);
  }
  const auto& rb = p.row_begin();
  const auto& rc = p.row_col();
  const auto& rv = p.row_value();
  for (int i = 0; i < p.num_constraints(); ++i) {
    double act = 0.0;
    for (int64_t k = rb[i]; k < rb[i + 1]; ++k) act += rv[k] * x[rc[k]];
    switch (p.relation(i)) {
      case Relation::kLe: CHECK(act <= p.rhs(i) + tol); break;
      case Relation::kGe: CHECK(act >= p.rhs(i) - tol); break;
      case Relation::kEq: CHECK(std::fabs(act - p.rhs(i)) <= tol); break;
    }
  }
}

TEST_CASE("lp: one variable floor") {
  LPProblem p;
  const int x = p.add_variable("x", 0.0, kInf, 1.0);
  const int row = p.add_constraint("floor", Relation::kGe, 1.0);
  p.add_coefficient(row, x, 1.0);
  p.set_objective_sense(Sense::kMinimize);
  p.seal();
  LPSolution s = solve_lp(p);
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.primal[x] == doctest::Approx(1.0).epsilon(1e-12));
  // Minimization with an active >= row: dual is +1.
  CHECK(s.dual[row] == doctest::Approx(1.0).epsilon(1e-12));
  check_strong_duality(p, s);
}

TEST_CASE("lp: two variables with known duals") {
  // max 3x + 2y s.t. x + y <= 4, x <= 2, x,y >= 0. Optimum (2,2) -> 10,
  // duals (2, 1).
  LPProblem p;
  const int x = p.add_variable("x", 0.0, kInf, 3.0);
  const int y = p.add_variable("y", 0.0, kInf, 2.0);
  const int r0 = p.add_constraint("cap", Relation::kLe, 4.0);
  p.add_coefficient(r0, x, 1.0);
  p.add_coefficient(r0, y, 1.0);
  const int r1 = p.add_constraint("xcap", Relation::kLe, 2.0);
  p.add_coefficient(r1, x, 1.0);
  p.set_objective_sense(Sense::kMaximize);
  p.seal();
  LPSolution s = solve_lp(p);
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.objective == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(s.primal[x] == doctest::Approx(2.0));
  CHECK(s.primal[y] == doctest::Approx(2.0));
  CHECK(s.dual[r0] == doctest::Approx(2.0));
  CHECK(s.dual[r1] == doctest::Approx(1.0));
  check_strong_duality(p, s);
}

TEST_CASE("lp: matching pennies encodes to value zero") {
  // max v s.t. v - p0 + p1 <= 0, v + p0 - p1 <= 0, p0 + p1 = 1, p >= 0.
  LPProblem p;
  const int v = p.add_variable("v", -kInf, kInf, 1.0);
  const int p0 = p.add_variable("p0", 0.0, kInf);
  const int p1 = p.add_variable("p1", 0.0, kInf);
  int r = p.add_constraint("heads", Relation::kLe, 0.0);
  p.add_coefficient(r, v, 1.0);
  p.add_coefficient(r, p0, -1.0);
  p.add_coefficient(r, p1, 1.0);
  r = p.add_constraint("tails", Relation::kLe, 0.0);
  p.add_coefficient(r, v, 1.0);
  p.add_coefficient(r, p0, 1.0);
  p.add_coefficient(r, p1, -1.0);
  r = p.add_constraint("simplex", Relation::kEq, 1.0);
  p.add_coefficient(r, p0, 1.0);
  p.add_coefficient(r, p1, 1.0);
  p.set_objective_sense(Sense::kMaximize);
  p.seal();
  LPSolution s = solve_lp(p);
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.objective == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.primal[p0] == doctest::Approx(0.5));
  CHECK(s.primal[p1] == doctest::Approx(0.5));
  check_strong_duality(p, s);
}

TEST_CASE("lp: cycling-prone degenerate program terminates at the optimum") {
  // The classical degenerate example that cycles under naive most-negative
  // pricing with fixed tie-breaks; the Bland fallback must escape it.
  // min -3/4 a + 150 b - 1/50 c + 6 d
  //   1/4 a -  60 b - 1/25 c + 9 d <= 0
  //   1/2 a -  90 b - 1/50 c + 3 d <= 0
  //                        c       <= 1
  // Optimum: -1/20 at c = 1, a = 1/25 * 25 ... (value is what matters).
  LPProblem p;
  const int a = p.add_variable("a", 0.0, kInf, -0.75);
  const int b = p.add_variable("b", 0.0, kInf, 150.0);
  const int c = p.add_variable("c", 0.0, kInf, -0.02);
  const int d = p.add_variable("d", 0.0, kInf, 6.0);
  int r = p.add_constraint("r0", Relation::kLe, 0.0);
  p.add_coefficient(r, a, 0.25);
  p.add_coefficient(r, b, -60.0);
  p.add_coefficient(r, c, -0.04);
  p.add_coefficient(r, d, 9.0);
  r = p.add_constraint("r1", Relation::kLe, 0.0);
  p.add_coefficient(r, a, 0.5);
  p.add_coefficient(r, b, -90.0);
  p.add_coefficient(r, c, -0.02);
  p.add_coefficient(r, d, 3.0);
  r = p.add_constraint("r2", Relation::kLe, 1.0);
  p.add_coefficient(r, c, 1.0);
  p.set_objective_sense(Sense::kMinimize);
  p.seal();
  LPSolution s = solve_lp(p);
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.objective == doctest::Approx(-0.05).epsilon(1e-9));
  check_strong_duality(p, s);
}

TEST_CASE("lp: infeasible program yields a certificate") {
  LPProblem p;
  const int x = p.add_variable("x", 0.0, kInf);
  int r0 = p.add_constraint("lo", Relation::kGe, 2.0);
  p.add_coefficient(r0, x, 1.0);
  int r1 = p.add_constraint("hi", Relation::kLe, 1.0);
  p.add_coefficient(r1, x, 1.0);
  p.set_objective_sense(Sense::kMinimize);
  p.seal();
  LPSolution s = solve_lp(p);
  REQUIRE(s.status == Status::kInfeasible);
  check_farkas(p, s.certificate);
  CHECK(s.certificate[r0] > 0.0);
  CHECK(s.certificate[r1] < 0.0);
}

TEST_CASE("lp: infeasible system with equalities yields a certificate") {
  // x + y = 3, x + y <= 1.
  LPProblem p;
  const int x = p.add_variable("x", 0.0, kInf);
  const int y = p.add_variable("y", 0.0, kInf, 1.0);
  int r0 = p.add_constraint("sum", Relation::kEq, 3.0);
  p.add_coefficient(r0, x, 1.0);
  p.add_coefficient(r0, y, 1.0);
  int r1 = p.add_constraint("cap", Relation::kLe, 1.0);
  p.add_coefficient(r1, x, 1.0);
  p.add_coefficient(r1, y, 1.0);
  p.set_objective_sense(Sense::kMinimize);
  p.seal();
  LPSolution s = solve_lp(p);
  REQUIRE(s.status == Status::kInfeasible);
  check_farkas(p, s.certificate);
}

TEST_CASE("lp: unbounded program yields a ray") {
  LPProblem p;
  const int x = p.add_variable("x", 0.0, kInf, 1.0);
  const int y = p.add_variable("y", 0.0, kInf, 1.0);
  int r = p.add_constraint("link", Relation::kGe, 1.0);
  p.add_coefficient(r, x, 1.0);
  p.add_coefficient(r, y, 1.0);
  p.set_objective_sense(Sense::kMaximize);
  p.seal();
  LPSolution s = solve_lp(p);
  REQUIRE(s.status == Status::kUnbounded);
  check_ray(p, s.certificate);
}

TEST_CASE("lp: unbounded minimization over a free variable") {
  LPProblem p;
  const int x = p.add_variable("x", -kInf, kInf, 1.0);
  const int y = p.add_variable("y", 0.0, 5.0, 0.0);
  int r = p.add_constraint("link", Relation::kLe, 3.0);
  p.add_coefficient(r, x, 1.0);
  p.add_coefficient(r, y, 1.0);
  p.set_objective_sense(Sense::kMinimize);
  p.seal();
  LPSolution s = solve_lp(p);
  REQUIRE(s.status == Status::kUnbounded);
  check_ray(p, s.certificate);
}

TEST_CASE("lp: fixed variables and negative bounds") {
  // min x + y with x fixed at 2, y in [-5, -1].
  LPProblem p;
  const int x = p.add_variable("x", 2.0, 2.0, 1.0);
  const int y = p.add_variable("y", -5.0, -1.0, 1.0);
  p.set_objective_sense(Sense::kMinimize);
  p.seal();
  LPSolution s = solve_lp(p);
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.primal[x] == doctest::Approx(2.0));
  CHECK(s.primal[y] == doctest::Approx(-5.0));
  CHECK(s.objective == doctest::Approx(-3.0));
  check_strong_duality(p, s);
}

TEST_CASE("lp: iteration cap reports fairly") {
  LPProblem p;
  for (int j = 0; j < 20; ++j) {
    p.add_variable("x" + std::to_string(j), 0.0, 10.0, -1.0);
  }
  for (int i = 0; i < 10; ++i) {
    int r = p.add_constraint("r" + std::to_string(i), Relation::kLe, 5.0);
    for (int j = 0; j < 20; ++j) {
      p.add_coefficient(r, j, ((i + j) % 3) * 0.5 + 0.1);
    }
  }
  p.set_objective_sense(Sense::kMinimize);
  p.seal();
  SolveOptions opts;
  opts.iteration_cap = 1;
  LPSolution s = solve_lp(p, opts);
  CHECK(s.status == Status::kIterationLimit);
}

TEST_CASE("lp: random bounded programs satisfy duality and determinism") {
  for (uint64_t seed = 1; seed <= 12; ++seed) {
    test::Rng rng(seed * 977);
    const int n = rng.uniform_int(3, 10);
    const int m = rng.uniform_int(2, 8);
    LPProblem p;
    std::vector<double> x0(n);
    for (int j = 0; j < n; ++j) {
      x0[j] = 0.25 * rng.uniform_int(0, 12);
      p.add_variable("x" + std::to_string(j), 0.0,
                     x0[j] + 0.25 * rng.uniform_int(0, 12),
                     0.5 * rng.uniform_int(-8, 8));
    }
    for (int i = 0; i < m; ++i) {
      double act = 0.0;
      std::vector<std::pair<int, double>> entries;
      for (int j = 0; j < n; ++j) {
        if (rng.uniform_int(0, 2) == 0) continue;
        const double a = 0.5 * rng.uniform_int(-6, 6);
        if (a == 0.0) continue;
        entries.emplace_back(j, a);
        act += a * x0[j];
      }
      const int kind = rng.uniform_int(0, 2);
      Relation rel = kind == 0 ? Relation::kLe
                               : (kind == 1 ? Relation::kGe : Relation::kEq);
      double rhs = act;
      if (rel == Relation::kLe) rhs += 0.25 * rng.uniform_int(0, 8);
      if (rel == Relation::kGe) rhs -= 0.25 * rng.uniform_int(0, 8);
      int r = p.add_constraint("r" + std::to_string(i), rel, rhs);
      for (auto [j, a] : entries) p.add_coefficient(r, j, a);
    }
    p.set_objective_sense(seed % 2 == 0 ? Sense::kMinimize : Sense::kMaximize);
    p.seal();
    LPSolution s = solve_lp(p);
    REQUIRE(s.status == Status::kOptimal);
    check_primal_feasible(p, s.primal);
    check_strong_duality(p, s);

    // Bit-identical repeat.
    LPSolution s2 = solve_lp(p);
    REQUIRE(s2.status == Status::kOptimal);
    CHECK(std::memcmp(s.primal.data(), s2.primal.data(),
                      s.primal.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(s.dual.data(), s2.dual.data(),
                      s.dual.size() * sizeof(double)) == 0);
  }
}

// Standard zero-sum encoding: maximize v s.t. for every row r,
// v <= sum_c payoff[r][c] y_c, sum y = 1, y >= 0.
double matrix_game_lp_value(const std::vector<std::vector<double>>& payoff) {
  LPProblem p;
  const int rows = static_cast<int>(payoff.size());
  const int cols = static_cast<int>(payoff[0].size());
  const int v = p.add_variable("v", -kInf, kInf, 1.0);
  for (int c = 0; c < cols; ++c) {
    p.add_variable("y" + std::to_string(c), 0.0, kInf);
  }
  for (int r = 0; r < rows; ++r) {
    int row = p.add_constraint("r" + std::to_string(r), Relation::kLe, 0.0);
    p.add_coefficient(row, v, 1.0);
    for (int c = 0; c < cols; ++c) {
      if (payoff[r][c] != 0.0) p.add_coefficient(row, 1 + c, -payoff[r][c]);
    }
  }
  int s = p.add_constraint("simplex", Relation::kEq, 1.0);
  for (int c = 0; c < cols; ++c) p.add_coefficient(s, 1 + c, 1.0);
  p.set_objective_sense(Sense::kMaximize);
  p.seal();
  LPSolution sol = solve_lp(p);
  REQUIRE(sol.status == Status::kOptimal);
  return sol.objective;
}

TEST_CASE("lp: matrix games match the kernel-enumeration oracle") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    test::Rng rng(seed * 31337);
    const int rows = rng.uniform_int(2, 4);
    const int cols = rng.uniform_int(2, 6);
    std::vector<std::vector<double>> payoff(rows, std::vector<double>(cols));
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        payoff[r][c] = 0.5 * rng.uniform_int(-10, 10);
      }
    }
    const double via_lp = matrix_game_lp_value(payoff);
    const double via_oracle = test::matrix_game_value(payoff);
    CHECK(via_lp == doctest::Approx(via_oracle).epsilon(1e-8));
  }
}

TEST_CASE("lp: builder misuse is rejected") {
  LPProblem p;
  p.add_variable("x", 0.0, 1.0);
  int r = p.add_constraint("r", Relation::kLe, 1.0);
  p.add_coefficient(r, 0, 1.0);
  CHECK_THROWS_AS(p.add_coefficient(r, 0, 2.0), std::logic_error);  // Dup.
  CHECK_THROWS_AS(p.add_coefficient(r, 7, 1.0), std::logic_error);
  CHECK_THROWS_AS(p.add_variable("x", 0.0, 1.0), std::logic_error);
  CHECK_THROWS_AS(p.add_variable("y", 2.0, 1.0), std::logic_error);
  p.seal();
  CHECK_THROWS_AS(p.add_variable("z", 0.0, 1.0), std::logic_error);
  CHECK_THROWS_AS(solve_lp(LPProblem{}), std::logic_error);  // Unsealed.
}

TEST_CASE("lp: mps export golden file") {
  LPProblem p;
  p.add_variable("alloc", 0.0, 10.0, 3.0);
  p.add_variable("ell", -kInf, kInf, 1.0);
  p.add_variable("slack_like", 0.0, kInf);
  p.add_variable("idle", -1.0, 2.0);
  int r0 = p.add_constraint("value", Relation::kLe, 4.0);
  p.add_coefficient(r0, 0, 1.0);
  p.add_coefficient(r0, 1, 1.0);
  int r1 = p.add_constraint("flow", Relation::kEq, 0.25);
  p.add_coefficient(r1, 0, 0.5);
  p.add_coefficient(r1, 2, -1.0);
  p.set_objective_sense(Sense::kMaximize);
  p.seal();
  const std::string expected =
      "NAME          DRAG\n"
      "OBJSENSE\n"
      "    MAX\n"
      "ROWS\n"
      " N  OBJ\n"
      " L  c0\n"
      " E  c1\n"
      "COLUMNS\n"
      "    x0        OBJ       3\n"
      "    x0        c0        1\n"
      "    x0        c1        0.5\n"
      "    x1        OBJ       1\n"
      "    x1        c0        1\n"
      "    x2        c1        -1\n"
      "    x3        OBJ       0\n"
      "RHS\n"
      "    RHS       c0        4\n"
      "    RHS       c1        0.25\n"
      "BOUNDS\n"
      " UP BND       x0        10\n"
      " FR BND       x1\n"
      " LO BND       x3        -1\n"
      " UP BND       x3        2\n"
      "ENDATA\n";
  CHECK(export_lp(p, Format::kMps) == expected);
  // Byte-stable across calls.
  CHECK(export_lp(p, Format::kMps) == export_lp(p, Format::kMps));
}

TEST_CASE("lp: lp-text export golden file") {
  LPProblem p;
  p.add_variable("alloc", 0.0, 10.0, 3.0);
  p.add_variable("ell", -kInf, kInf, 1.0);
  int r0 = p.add_constraint("value row", Relation::kLe, 4.0);
  p.add_coefficient(r0, 0, 1.0);
  p.add_coefficient(r0, 1, -2.0);
  p.set_objective_sense(Sense::kMaximize);
  p.seal();
  const std::string expected =
      "\\ DRAG lp export\n"
      "Maximize\n"
      " OBJ: 3 alloc + ell\n"
      "Subject To\n"
      " value_row: alloc - 2 ell <= 4\n"
      "Bounds\n"
      " alloc <= 10\n"
      " ell free\n"
      "End\n";
  CHECK(export_lp(p, Format::kLpText) == expected);
}

TEST_CASE("lp: solution import round-trips and validates") {
  LPProblem p;
  const int x = p.add_variable("x", 0.0, kInf, 3.0);
  const int y = p.add_variable("y", 0.0, kInf, 2.0);
  int r0 = p.add_constraint("cap", Relation::kLe, 4.0);
  p.add_coefficient(r0, x, 1.0);
  p.add_coefficient(r0, y, 1.0);
  int r1 = p.add_constraint("xcap", Relation::kLe, 2.0);
  p.add_coefficient(r1, x, 1.0);
  p.set_objective_sense(Sense::kMaximize);
  p.seal();

  SUBCASE("declared names") {
    LPSolution s = import_solution(p, "# comment\nx 2\ny 2\n");
    CHECK(s.status == Status::kOptimal);
    CHECK(s.objective == doctest::Approx(10.0));
    CHECK(s.stats.pivot_rule == "imported");
  }
  SUBCASE("canonical names with duals") {
    LPSolution s = import_solution(p, "x0 2\nx1 2\nc0 2\nc1 1\n");
    CHECK(s.objective == doctest::Approx(10.0));
    CHECK(s.dual[r0] == doctest::Approx(2.0));
  }
  SUBCASE("missing variable") {
    CHECK_THROWS_AS(import_solution(p, "x 2\n"), DragError);
  }
  SUBCASE("primal infeasibility") {
    CHECK_THROWS_AS(import_solution(p, "x 5\ny 5\n"), DragError);
  }
  SUBCASE("inconsistent duals") {
    CHECK_THROWS_AS(import_solution(p, "x 2\ny 2\nc0 9\nc1 1\n"), DragError);
  }
  SUBCASE("unknown name") {
    CHECK_THROWS_AS(import_solution(p, "x 2\ny 2\nbogus 1\n"), DragError);
  }
  SUBCASE("garbage line") {
    CHECK_THROWS_AS(import_solution(p, "x\n"), DragError);
  }
}

TEST_CASE("lp: degenerate flow-style chain solves exactly") {
  // A small staircase in the shape the equilibrium programs take:
  // max l0 s.t. l0 <= z0, z0 = 1, chained copies downstream.
  LPProblem p;
  const int depth = 30;
  std::vector<int> z(depth), l(depth);
  for (int k = 0; k < depth; ++k) {
    z[k] = p.add_variable("z" + std::to_string(k), 0.0, kInf);
    l[k] = p.add_variable("l" + std::to_string(k), -kInf, kInf,
                          k == 0 ? 1.0 : 0.0);
  }
  for (int k = 0; k < depth; ++k) {
    int rv = p.add_constraint("v" + std::to_string(k), Relation::kLe, 0.0);
    p.add_coefficient(rv, l[k], 1.0);
    p.add_coefficient(rv, z[k], -0.5);
    if (k + 1 < depth) p.add_coefficient(rv, l[k + 1], -1.0);
    int rf = p.add_constraint("f" + std::to_string(k), Relation::kEq,
                              k == 0 ? 1.0 : 0.0);
    p.add_coefficient(rf, z[k], 1.0);
    if (k > 0) p.add_coefficient(rf, z[k - 1], -1.0);
  }
  p.set_objective_sense(Sense::kMaximize);
  p.seal();
  LPSolution s = solve_lp(p);
  REQUIRE(s.status == Status::kOptimal);
  // Every z_k = 1, value sums 0.5 per level.
  CHECK(s.objective == doctest::Approx(0.5 * depth).epsilon(1e-9));
  check_strong_duality(p, s);
}

}  // namespace
}  // namespace drag::lp
