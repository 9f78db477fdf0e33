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

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "flexsum/lp.hpp"

namespace flexsum {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// {x : A x <= b}.
class HPolytope {
 public:
  HPolytope() = default;
  HPolytope(Matrix A, Vector b);

  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  int dim() const { return static_cast<int>(A_.cols()); }
  int num_rows() const { return static_cast<int>(A_.rows()); }

 private:
  Matrix A_;
  Vector b_;
};

/// Generalized battery model: power profile u in [u_lo, u_hi] and net energy
/// L u in [x_lo, x_hi], where (L u)(t) = delta * sum_{s <= t} u(s).
struct BatteryModel {
  Vector u_lo;
  Vector u_hi;
  Vector x_lo;
  Vector x_hi;
  double delta = 1.0;

  int horizon() const { return static_cast<int>(u_lo.size()); }
  /// Throws DomainError when lengths disagree, bounds are crossed or
  /// delta <= 0.
  void validate() const;
};

/// center + map * base.
struct AHPolytope {
  Vector center;
  Matrix map;
  HPolytope base;
};

/// Base set {u : H u <= h0} with h0 the mean of the member right-hand sides.
struct BaseSet {
  HPolytope polytope;
  int horizon = 0;
  double delta = 1.0;

  const Vector& h0() const { return polytope.b(); }
};

/// Lower-triangular T x T matrix with every entry on/below the diagonal equal
/// to delta.
Matrix build_cumulative_matrix(int T, double delta);

/// Inverse of build_cumulative_matrix: (1/delta) on the diagonal and
/// -(1/delta) on the first subdiagonal.
Matrix build_difference_matrix(int T, double delta);

/// The shared constraint matrix H = (L; -L; I; -I), 4T x T.
Matrix battery_matrix(int T, double delta);

/// h = (x_hi; -x_lo; u_hi; -u_lo).
Vector battery_rhs(const BatteryModel& model);

HPolytope battery_to_hpolytope(const BatteryModel& model);

/// Throws DimensionError on an empty list or mismatched T / delta.
BaseSet build_base_set(std::span<const BatteryModel> models);

/// A x <= b + tol * (1 + |b|), row by row.
bool contains_point(const HPolytope& p, const Vector& x, double tol);

/// Largest violation of A x <= b measured as (A x - b) / (1 + |b|); <= 0
/// inside.
double membership_violation(const HPolytope& p, const Vector& x);

/// argmax c^T x over p.  Throws DomainError when p is empty or unbounded in
/// direction c.
Vector support_point(const HPolytope& p, const Vector& c,
                     const lp::LpOptions& options = lp::default_options());

struct ChebyshevBall {
  Vector center;
  double radius = 0.0;
};

/// Largest inscribed ball.  Throws DomainError when p is empty; the radius is
/// +inf when p contains arbitrarily large balls.
ChebyshevBall chebyshev_ball(const HPolytope& p,
                             const lp::LpOptions& options = lp::default_options());
double chebyshev_radius(const HPolytope& p,
                        const lp::LpOptions& options = lp::default_options());

struct LogAbsDet {
  int sign = 0;  // -1, 0 (singular) or +1
  double log_abs = 0.0;
};

/// LU with partial pivoting.  A pivot below 1e-12 * max|M_ij| counts as
/// singular (sign 0, log_abs = -inf).
LogAbsDet log_abs_det(const Matrix& M);

/// |det inner| / |det outer| evaluated in log space.  Throws DomainError when
/// the shapes differ or outer is singular.
double volume_ratio(const Matrix& inner_map, const Matrix& outer_map);

}  // namespace flexsum
