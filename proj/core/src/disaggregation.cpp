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

#include "flexsum/disaggregation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flexsum/error.hpp"

namespace flexsum {

namespace {

constexpr double kMaxCondition = 1e12;

double inf_norm(const Matrix& M) { return M.cwiseAbs().rowwise().sum().maxCoeff(); }

Vector lp_base_point(const TransformResult& r, const Vector& rhs, double tol) {
  const HPolytope& U0 = r.base.polytope;
  const int T = U0.dim();
  const Vector c = chebyshev_ball(U0).center;

  lp::LinearProgram prog(lp::Sense::kMinimize);
  const auto x = prog.add_block("u0", T);
  const auto s = prog.add_block("s", 1, 1, 0.0);
  prog.add_objective(s(0), 1.0);
  lp::LinearExpr row;
  for (int i = 0; i < U0.num_rows(); ++i) {
    row.clear();
    for (int j = 0; j < T; ++j) {
      if (U0.A()(i, j) != 0.0) row.push_back({x(j), U0.A()(i, j)});
    }
    prog.add_less_equal(row, U0.b()(i));
  }
  for (int i = 0; i < T; ++i) {
    row.clear();
    for (int j = 0; j < T; ++j) {
      if (r.map(i, j) != 0.0) row.push_back({x(j), r.map(i, j)});
    }
    prog.add_equal(row, rhs(i));
  }
  for (int j = 0; j < T; ++j) {
    const lp::Term up[] = {{x(j), 1.0}, {s(0), -1.0}};
    const lp::Term dn[] = {{x(j), -1.0}, {s(0), -1.0}};
    prog.add_less_equal(up, c(j));
    prog.add_less_equal(dn, -c(j));
  }
  lp::LpOptions options = lp::default_options();
  options.tol = std::min(options.tol, tol);
  const auto sol = lp::solve_lp(prog, options);
  if (sol.status == lp::Status::kInfeasible) {
    throw DomainError("point outside inner approximation");
  }
  if (!sol.optimal()) throw SolverError("base point LP: " + sol.message);
  const Vector u0 = sol.at("u0");
  const double residual = (r.map * u0 - rhs).cwiseAbs().maxCoeff();
  if (residual > tol * (1.0 + rhs.cwiseAbs().maxCoeff())) {
    throw DomainError("point outside inner approximation");
  }
  return u0;
}

}  // namespace

double condition_estimate(const Matrix& M) {
  if (M.rows() != M.cols()) throw DimensionError("condition estimate needs a square matrix");
  if (M.rows() == 0) return 1.0;
  if (log_abs_det(M).sign == 0) return std::numeric_limits<double>::infinity();
  return inf_norm(M) * inf_norm(M.partialPivLu().inverse());
}

Vector recover_base_point(const TransformResult& result, const Vector& u, double tol) {
  const int T = result.base.polytope.dim();
  if (u.size() != T || result.map.rows() != T || result.map.cols() != T ||
      result.center.size() != T) {
    throw DimensionError("profile length does not match the inner approximation");
  }
  if (!u.allFinite()) throw DomainError("profile has non-finite entries");
  const Vector rhs = u - result.center;
  if (condition_estimate(result.map) <= kMaxCondition) {
    Vector u0 = result.map.partialPivLu().solve(rhs);
    if (!contains_point(result.base.polytope, u0, tol)) {
      throw DomainError("point outside inner approximation");
    }
    return u0;
  }
  return lp_base_point(result, rhs, tol);
}

std::vector<Vector> disaggregate(const TransformResult& result, const Vector& u, double tol) {
  const Vector u0 = recover_base_point(result, u, tol);
  std::vector<Vector> out;
  out.reserve(result.per_set.size());
  for (const auto& p : result.per_set) out.push_back(p.gamma + p.Gamma * u0);
  return out;
}

}  // namespace flexsum
