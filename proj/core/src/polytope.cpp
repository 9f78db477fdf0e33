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

#include "flexsum/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "flexsum/error.hpp"

namespace flexsum {

HPolytope::HPolytope(Matrix A, Vector b) : A_(std::move(A)), b_(std::move(b)) {
  if (A_.rows() != b_.size()) {
    throw DimensionError("H-polytope has " + std::to_string(A_.rows()) + " rows but rhs of length " +
                         std::to_string(b_.size()));
  }
  if (!A_.allFinite() || !b_.allFinite()) {
    throw DomainError("H-polytope entries must be finite");
  }
}

void BatteryModel::validate() const {
  const auto T = u_lo.size();
  if (T < 1) throw DimensionError("battery model needs at least one period");
  if (u_hi.size() != T || x_lo.size() != T || x_hi.size() != T) {
    throw DimensionError("battery model limit vectors must share length T");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("battery model delta must be positive");
  if (!u_lo.allFinite() || !u_hi.allFinite() || !x_lo.allFinite() || !x_hi.allFinite()) {
    throw DomainError("battery model limits must be finite");
  }
  for (Eigen::Index t = 0; t < T; ++t) {
    if (u_lo(t) > u_hi(t)) throw DomainError("u_lo > u_hi at period " + std::to_string(t));
    if (x_lo(t) > x_hi(t)) throw DomainError("x_lo > x_hi at period " + std::to_string(t));
  }
}

Matrix build_cumulative_matrix(int T, double delta) {
  if (T < 1) throw DimensionError("T must be at least 1");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  Matrix L = Matrix::Zero(T, T);
  for (int i = 0; i < T; ++i) {
    for (int j = 0; j <= i; ++j) L(i, j) = delta;
  }
  return L;
}

Matrix build_difference_matrix(int T, double delta) {
  if (T < 1) throw DimensionError("T must be at least 1");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  Matrix D = Matrix::Zero(T, T);
  for (int i = 0; i < T; ++i) {
    D(i, i) = 1.0 / delta;
    if (i > 0) D(i, i - 1) = -1.0 / delta;
  }
  return D;
}

Matrix battery_matrix(int T, double delta) {
  const Matrix L = build_cumulative_matrix(T, delta);
  Matrix H(4 * T, T);
  H << L, -L, Matrix::Identity(T, T), -Matrix::Identity(T, T);
  return H;
}

Vector battery_rhs(const BatteryModel& model) {
  model.validate();
  const int T = model.horizon();
  Vector h(4 * T);
  h << model.x_hi, -model.x_lo, model.u_hi, -model.u_lo;
  return h;
}

HPolytope battery_to_hpolytope(const BatteryModel& model) {
  return HPolytope(battery_matrix(model.horizon(), model.delta), battery_rhs(model));
}

BaseSet build_base_set(std::span<const BatteryModel> models) {
  if (models.empty()) throw DimensionError("base set needs at least one model");
  const int T = models.front().horizon();
  const double delta = models.front().delta;
  Vector sum = Vector::Zero(4 * T);
  for (const auto& m : models) {
    if (m.horizon() != T) throw DimensionError("models disagree on T");
    if (m.delta != delta) throw DimensionError("models disagree on delta");
    sum += battery_rhs(m);
  }
  BaseSet base;
  base.horizon = T;
  base.delta = delta;
  base.polytope = HPolytope(battery_matrix(T, delta), sum / static_cast<double>(models.size()));
  return base;
}

double membership_violation(const HPolytope& p, const Vector& x) {
  if (x.size() != p.dim()) throw DimensionError("point dimension does not match polytope");
  if (p.num_rows() == 0) return -std::numeric_limits<double>::infinity();
  const Vector slack = p.A() * x - p.b();
  return (slack.array() / (1.0 + p.b().array().abs())).maxCoeff();
}

bool contains_point(const HPolytope& p, const Vector& x, double tol) {
  return membership_violation(p, x) <= tol;
}

Vector support_point(const HPolytope& p, const Vector& c, const lp::LpOptions& options) {
  if (c.size() != p.dim()) throw DimensionError("direction dimension does not match polytope");
  lp::LinearProgram prog(lp::Sense::kMaximize);
  const auto x = prog.add_block("x", p.dim());
  for (int j = 0; j < p.dim(); ++j) prog.add_objective(x(j), c(j));
  lp::LinearExpr row;
  for (int i = 0; i < p.num_rows(); ++i) {
    row.clear();
    for (int j = 0; j < p.dim(); ++j) {
      if (p.A()(i, j) != 0.0) row.push_back({x(j), p.A()(i, j)});
    }
    prog.add_less_equal(row, p.b()(i));
  }
  const auto sol = solve_lp(prog, options);
  switch (sol.status) {
    case lp::Status::kOptimal:
      return sol.at("x");
    case lp::Status::kInfeasible:
      throw DomainError("support point of an empty polytope");
    case lp::Status::kUnbounded:
      throw DomainError("polytope is unbounded in the requested direction");
    default:
      throw SolverError("support point LP failed: " + sol.message);
  }
}

ChebyshevBall chebyshev_ball(const HPolytope& p, const lp::LpOptions& options) {
  if (p.num_rows() == 0) throw DomainError("Chebyshev ball of a polytope without rows");
  lp::LinearProgram prog(lp::Sense::kMaximize);
  const auto x = prog.add_block("x", p.dim());
  const auto r = prog.add_block("r", 1, 1, 0.0);
  prog.add_objective(r(0), 1.0);
  lp::LinearExpr row;
  for (int i = 0; i < p.num_rows(); ++i) {
    row.clear();
    for (int j = 0; j < p.dim(); ++j) {
      if (p.A()(i, j) != 0.0) row.push_back({x(j), p.A()(i, j)});
    }
    row.push_back({r(0), p.A().row(i).norm()});
    prog.add_less_equal(row, p.b()(i));
  }
  const auto sol = solve_lp(prog, options);
  switch (sol.status) {
    case lp::Status::kOptimal: {
      ChebyshevBall ball;
      ball.center = sol.at("x");
      ball.radius = std::max(0.0, sol.value(r(0)));
      return ball;
    }
    case lp::Status::kInfeasible:
      throw DomainError("polytope is empty");
    case lp::Status::kUnbounded: {
      ChebyshevBall ball;
      ball.center = Vector::Zero(p.dim());
      ball.radius = std::numeric_limits<double>::infinity();
      return ball;
    }
    default:
      throw SolverError("Chebyshev LP failed: " + sol.message);
  }
}

double chebyshev_radius(const HPolytope& p, const lp::LpOptions& options) {
  return chebyshev_ball(p, options).radius;
}

LogAbsDet log_abs_det(const Matrix& M) {
  if (M.rows() != M.cols()) throw DimensionError("log_abs_det needs a square matrix");
  const Eigen::Index n = M.rows();
  LogAbsDet out;
  if (n == 0) {
    out.sign = 1;
    return out;
  }
  Matrix lu = M;
  const double scale = lu.cwiseAbs().maxCoeff();
  const double threshold = 1e-12 * scale;
  int sign = 1;
  double log_abs = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    double best = std::abs(lu(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        pivot = i;
      }
    }
    if (!(best > threshold)) {
      out.sign = 0;
      out.log_abs = -std::numeric_limits<double>::infinity();
      return out;
    }
    if (pivot != k) {
      lu.row(k).swap(lu.row(pivot));
      sign = -sign;
    }
    const double d = lu(k, k);
    if (d < 0.0) sign = -sign;
    log_abs += std::log(std::abs(d));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double factor = lu(i, k) / d;
      if (factor == 0.0) continue;
      lu.row(i).tail(n - k - 1) -= factor * lu.row(k).tail(n - k - 1);
    }
  }
  out.sign = sign;
  out.log_abs = log_abs;
  return out;
}

double volume_ratio(const Matrix& inner_map, const Matrix& outer_map) {
  if (inner_map.rows() != inner_map.cols() || outer_map.rows() != outer_map.cols() ||
      inner_map.rows() != outer_map.rows()) {
    throw DimensionError("volume ratio needs square maps of equal size");
  }
  const auto outer = log_abs_det(outer_map);
  if (outer.sign == 0) throw DomainError("outer map is singular");
  const auto inner = log_abs_det(inner_map);
  if (inner.sign == 0) return 0.0;
  return std::exp(inner.log_abs - outer.log_abs);
}

}  // namespace flexsum
