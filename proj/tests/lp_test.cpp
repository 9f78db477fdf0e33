// Copyright 2026 The flexsum Authors. All Rights Reserved.
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

#include "flexsum/lp.hpp"

#include <gtest/gtest.h>

#include <random>

#include "flexsum/error.hpp"

namespace flexsum::lp {
namespace {

TEST(Lp, SingleBoundedVariable) {
  LinearProgram prog(Sense::kMaximize);
  const auto x = prog.add_block("x", 1, 1, 0.0);
  prog.add_objective(x(0), 1.0);
  const Term row[] = {{x(0), 1.0}};
  prog.add_less_equal(row, 3.0);
  const auto sol = solve_lp(prog);
  ASSERT_EQ(sol.status, Status::kOptimal);
  EXPECT_NEAR(sol.objective_value, 3.0, 1e-9);
  EXPECT_NEAR(sol.at("x")(0, 0), 3.0, 1e-9);
}

TEST(Lp, ContradictoryBoundsAreInfeasible) {
  LinearProgram prog(Sense::kMaximize);
  const auto x = prog.add_block("x", 1, 1, 0.0);
  prog.add_objective(x(0), 1.0);
  const Term row[] = {{x(0), 1.0}};
  prog.add_less_equal(row, -1.0);
  const auto sol = solve_lp(prog);
  EXPECT_EQ(sol.status, Status::kInfeasible);
  EXPECT_TRUE(sol.values.empty());
  EXPECT_THROW(sol.at("x"), DomainError);
}

TEST(Lp, SimplexVertex) {
  LinearProgram prog(Sense::kMaximize);
  const auto v = prog.add_block("v", 2, 1, 0.0);
  prog.add_objective(v(0), 1.0);
  prog.add_objective(v(1), 1.0);
  const Term row[] = {{v(0), 1.0}, {v(1), 1.0}};
  prog.add_less_equal(row, 2.0);
  const auto sol = solve_lp(prog);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective_value, 2.0, 1e-9);
}

TEST(Lp, UnboundedIsReported) {
  LinearProgram prog(Sense::kMaximize);
  const auto x = prog.add_block("x", 1, 1, 0.0);
  prog.add_objective(x(0), 1.0);
  EXPECT_EQ(solve_lp(prog).status, Status::kUnbounded);
}

TEST(Lp, EqualityAndGreaterEqualRows) {
  // min x + 2y  s.t.  x + y = 3, x >= 1, y >= 0.5.
  LinearProgram prog(Sense::kMinimize);
  const auto v = prog.add_block("v", 2);
  prog.add_objective(v(0), 1.0);
  prog.add_objective(v(1), 2.0);
  const Term sum[] = {{v(0), 1.0}, {v(1), 1.0}};
  prog.add_equal(sum, 3.0);
  const Term lx[] = {{v(0), 1.0}};
  const Term ly[] = {{v(1), 1.0}};
  prog.add_greater_equal(lx, 1.0);
  prog.add_greater_equal(ly, 0.5);
  const auto sol = solve_lp(prog);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective_value, 3.5, 1e-9);
  EXPECT_NEAR(sol.at("v")(0, 0), 2.5, 1e-9);
}

TEST(Lp, MatrixBlocksAreRowMajor) {
  LinearProgram prog(Sense::kMaximize);
  const auto M = prog.add_block("M", 2, 3, -20.0, 20.0);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 3; ++c) {
      const Term t[] = {{M(r, c), 1.0}};
      prog.add_equal(t, 10.0 * r + c);
    }
  }
  const auto sol = solve_lp(prog);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.at("M")(1, 2), 12.0, 1e-9);
  EXPECT_NEAR(sol.at("M")(0, 1), 1.0, 1e-9);
}

TEST(Lp, DuplicateTermsAreMerged) {
  LinearProgram prog(Sense::kMaximize);
  const auto x = prog.add_block("x", 1);
  prog.add_objective(x(0), 1.0);
  const Term row[] = {{x(0), 1.0}, {x(0), 1.0}};  // 2x <= 4
  prog.add_less_equal(row, 4.0);
  const auto sol = solve_lp(prog);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective_value, 2.0, 1e-9);
}

TEST(Lp, MalformedProgramsThrow) {
  LinearProgram prog;
  const auto x = prog.add_block("x", 1);
  EXPECT_THROW(prog.add_block("x", 1), DomainError);
  const Term bad[] = {{x(0) + 5, 1.0}};
  EXPECT_THROW(prog.add_less_equal(bad, 1.0), DimensionError);
  const Term ok[] = {{x(0), 1.0}};
  EXPECT_THROW(prog.add_less_equal(ok, std::numeric_limits<double>::infinity()), DomainError);
  EXPECT_THROW(prog.add_block("y", 1, 1, 2.0, 1.0), DomainError);
  LpOptions opt;
  opt.tol = 0.0;
  EXPECT_THROW(solve_lp(prog, opt), DomainError);
}

TEST(Lp, EnvironmentToleranceOverride) {
  ::setenv("FLEXSUM_LP_TOL", "1e-6", 1);
  EXPECT_DOUBLE_EQ(default_tolerance(), 1e-6);
  ::setenv("FLEXSUM_LP_TOL", "garbage", 1);
  EXPECT_DOUBLE_EQ(default_tolerance(), 1e-8);
  ::unsetenv("FLEXSUM_LP_TOL");
  EXPECT_DOUBLE_EQ(default_tolerance(), 1e-8);
}

// Random dense LPs over a box: feasibility of the answer and repeatability.
TEST(LpProperty, RandomProgramsAreFeasibleAndRepeatable) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 5;
    LinearProgram prog(trial % 2 ? Sense::kMaximize : Sense::kMinimize);
    const auto x = prog.add_block("x", n, 1, -5.0, 5.0);
    for (int j = 0; j < n; ++j) prog.add_objective(x(j), u(rng));
    for (int r = 0; r < 3 * n; ++r) {
      LinearExpr row;
      for (int j = 0; j < n; ++j) row.push_back({x(j), u(rng)});
      prog.add_less_equal(row, 1.0 + std::abs(u(rng)));  // 0 stays feasible
    }
    const auto a = solve_lp(prog);
    const auto b = solve_lp(prog);
    ASSERT_TRUE(a.optimal());
    ASSERT_TRUE(b.optimal());
    EXPECT_LE(prog.max_violation(a.x), 1e-8);
    EXPECT_NEAR(a.objective_value, b.objective_value, 1e-7);
  }
}

TEST(LpProperty, InteriorPointPathAgreesWithSimplex) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LinearProgram prog(Sense::kMaximize);
  const int n = 30;
  const auto x = prog.add_block("x", n, 1, -3.0, 3.0);
  for (int j = 0; j < n; ++j) prog.add_objective(x(j), u(rng));
  for (int r = 0; r < 60; ++r) {
    LinearExpr row;
    for (int j = 0; j < n; ++j) row.push_back({x(j), u(rng)});
    prog.add_less_equal(row, 2.0);
  }
  LpOptions simplex = default_options();
  simplex.algorithm = Algorithm::kSimplex;
  LpOptions ipm = default_options();
  ipm.algorithm = Algorithm::kInteriorPoint;
  const auto a = solve_lp(prog, simplex);
  const auto b = solve_lp(prog, ipm);
  ASSERT_TRUE(a.optimal());
  ASSERT_TRUE(b.optimal());
  EXPECT_NEAR(a.objective_value, b.objective_value, 1e-6 * (1 + std::abs(a.objective_value)));
  EXPECT_LE(prog.max_violation(b.x), 1e-8);
}

}  // namespace
}  // namespace flexsum::lp
