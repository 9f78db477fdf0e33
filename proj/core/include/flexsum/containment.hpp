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

// Containment of an affine image of an H-polytope in another H-polytope.
//
// For X = {x : Hx x <= hx} nonempty and Y = {y : Hy y <= hy},
//
//     gamma + Gamma X  is a subset of  Y
//
// holds exactly when some Lambda >= 0 (rows of Y by rows of X) satisfies
//
//     Lambda Hx = Hy Gamma,    Lambda hx <= hy - Hy gamma.
//
// Row j of Lambda is a dual solution of max{Hy_j (gamma + Gamma x) : x in X}.

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "flexsum/lp.hpp"
#include "flexsum/polytope.hpp"

namespace flexsum {

struct ContainmentCertificate {
  Matrix lambda;  // m_y x m_x, elementwise >= 0
};

/// A rows x cols matrix whose entries are affine in LP variables.  Used to
/// describe gamma and Gamma while building a containment block, so the same
/// encoder serves free matrices, scaled identities and constants.
class AffineMatrix {
 public:
  using EntryFn = std::function<void(int r, int c, lp::LinearExpr& terms, double& constant)>;

  AffineMatrix(int rows, int cols, EntryFn entry)
      : rows_(rows), cols_(cols), entry_(std::move(entry)) {}

  /// Every entry is its own variable of `block`.
  static AffineMatrix variables(const lp::VarBlock& block);
  static AffineMatrix constant(const Matrix& value);
  /// scale_var * I (n x n).
  static AffineMatrix scaled_identity(int n, int scale_var);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  /// Appends the variable terms of entry (r, c) to `terms` and adds its
  /// constant part to `constant`.
  void entry(int r, int c, lp::LinearExpr& terms, double& constant) const {
    entry_(r, c, terms, constant);
  }

 private:
  int rows_;
  int cols_;
  EntryFn entry_;
};

/// Sizes of what encode_containment_rows added.
struct ContainmentBlocks {
  lp::VarBlock lambda;
  int equality_rows = 0;
  int inequality_rows = 0;
};

/// Adds Lambda >= 0, Lambda Hx = Hy Gamma and Lambda hx + Hy gamma <= hy to
/// `prog`, with Lambda a new block called `lambda_name`.  `gamma` must be
/// n_y x 1 and `Gamma` n_y x n_x.  Throws DimensionError on shape mismatch.
ContainmentBlocks encode_containment_rows(lp::LinearProgram& prog, const HPolytope& X,
                                          const HPolytope& Y, const AffineMatrix& gamma,
                                          const AffineMatrix& Gamma,
                                          const std::string& lambda_name = "lambda");

/// Worst violation of the three certificate conditions for fixed (gamma,
/// Gamma, Lambda).  Negativity and the equality block are absolute; the
/// inequality block is relative to (1 + |hy|).
double certificate_violation(const HPolytope& X, const HPolytope& Y, const Vector& gamma,
                             const Matrix& Gamma, const ContainmentCertificate& cert);

/// Returns a certificate iff gamma + Gamma X is contained in Y (X must be
/// nonempty).  The certificate is rechecked at 10 * tol.  Throws SolverError
/// when the LP fails or the recheck does not pass.
std::optional<ContainmentCertificate> check_containment(
    const HPolytope& X, const HPolytope& Y, const Vector& gamma, const Matrix& Gamma,
    double tol = lp::default_tolerance());

}  // namespace flexsum
