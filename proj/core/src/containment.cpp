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

#include "flexsum/containment.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "flexsum/error.hpp"

namespace flexsum {

AffineMatrix AffineMatrix::variables(const lp::VarBlock& block) {
  return AffineMatrix(block.rows, block.cols,
                      [block](int r, int c, lp::LinearExpr& terms, double&) {
                        terms.push_back({block(r, c), 1.0});
                      });
}

AffineMatrix AffineMatrix::constant(const Matrix& value) {
  return AffineMatrix(static_cast<int>(value.rows()), static_cast<int>(value.cols()),
                      [value](int r, int c, lp::LinearExpr&, double& constant) {
                        constant += value(r, c);
                      });
}

AffineMatrix AffineMatrix::scaled_identity(int n, int scale_var) {
  return AffineMatrix(n, n, [scale_var](int r, int c, lp::LinearExpr& terms, double&) {
    if (r == c) terms.push_back({scale_var, 1.0});
  });
}

namespace {

// Column-wise / row-wise nonzero patterns of a dense matrix.
std::vector<std::vector<int>> column_support(const Matrix& M) {
  std::vector<std::vector<int>> cols(M.cols());
  for (Eigen::Index c = 0; c < M.cols(); ++c) {
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
      if (M(r, c) != 0.0) cols[c].push_back(static_cast<int>(r));
    }
  }
  return cols;
}

std::vector<std::vector<int>> row_support(const Matrix& M) {
  std::vector<std::vector<int>> rows(M.rows());
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      if (M(r, c) != 0.0) rows[r].push_back(static_cast<int>(c));
    }
  }
  return rows;
}

}  // namespace

ContainmentBlocks encode_containment_rows(lp::LinearProgram& prog, const HPolytope& X,
                                          const HPolytope& Y, const AffineMatrix& gamma,
                                          const AffineMatrix& Gamma,
                                          const std::string& lambda_name) {
  const int mx = X.num_rows();
  const int nx = X.dim();
  const int my = Y.num_rows();
  const int ny = Y.dim();
  if (gamma.rows() != ny || gamma.cols() != 1) {
    throw DimensionError("gamma must be a vector in the dimension of Y");
  }
  if (Gamma.rows() != ny || Gamma.cols() != nx) {
    throw DimensionError("Gamma must map the space of X into the space of Y");
  }

  ContainmentBlocks out;
  out.lambda = prog.add_block(lambda_name, my, mx, 0.0);
  const auto& lambda = out.lambda;
  const auto hx_cols = column_support(X.A());
  const auto hy_rows = row_support(Y.A());

  lp::LinearExpr row;
  lp::LinearExpr entry_terms;
  // Lambda Hx - Hy Gamma = 0, one row per (j, t).
  for (int j = 0; j < my; ++j) {
    for (int t = 0; t < nx; ++t) {
      row.clear();
      double constant = 0.0;
      for (int k : hx_cols[t]) row.push_back({lambda(j, k), X.A()(k, t)});
      for (int s : hy_rows[j]) {
        entry_terms.clear();
        double c = 0.0;
        Gamma.entry(s, t, entry_terms, c);
        const double h = Y.A()(j, s);
        for (const auto& term : entry_terms) row.push_back({term.var, -h * term.coef});
        constant -= h * c;
      }
      prog.add_equal(row, -constant);
      ++out.equality_rows;
    }
  }
  // Lambda hx + Hy gamma <= hy.
  for (int j = 0; j < my; ++j) {
    row.clear();
    double constant = 0.0;
    for (int k = 0; k < mx; ++k) {
      if (X.b()(k) != 0.0) row.push_back({lambda(j, k), X.b()(k)});
    }
    for (int s : hy_rows[j]) {
      entry_terms.clear();
      double c = 0.0;
      gamma.entry(s, 0, entry_terms, c);
      const double h = Y.A()(j, s);
      for (const auto& term : entry_terms) row.push_back({term.var, h * term.coef});
      constant += h * c;
    }
    prog.add_less_equal(row, Y.b()(j) - constant);
    ++out.inequality_rows;
  }
  return out;
}

double certificate_violation(const HPolytope& X, const HPolytope& Y, const Vector& gamma,
                             const Matrix& Gamma, const ContainmentCertificate& cert) {
  const auto& L = cert.lambda;
  if (L.rows() != Y.num_rows() || L.cols() != X.num_rows()) {
    throw DimensionError("certificate shape does not match the polytopes");
  }
  double worst = std::max(0.0, -L.minCoeff());
  if (L.size() == 0) worst = 0.0;
  const Matrix eq = L * X.A() - Y.A() * Gamma;
  if (eq.size() > 0) worst = std::max(worst, eq.cwiseAbs().maxCoeff());
  const Vector ineq = L * X.b() + Y.A() * gamma - Y.b();
  if (ineq.size() > 0) {
    worst = std::max(worst, (ineq.array() / (1.0 + Y.b().array().abs())).maxCoeff());
  }
  return worst;
}

std::optional<ContainmentCertificate> check_containment(const HPolytope& X, const HPolytope& Y,
                                                        const Vector& gamma, const Matrix& Gamma,
                                                        double tol) {
  if (gamma.size() != Y.dim() || Gamma.rows() != Y.dim() || Gamma.cols() != X.dim()) {
    throw DimensionError("containment check: shapes of gamma/Gamma do not match X and Y");
  }
  // Feasibility only: zero objective.
  lp::LinearProgram prog(lp::Sense::kMinimize);
  encode_containment_rows(prog, X, Y, AffineMatrix::constant(gamma),
                          AffineMatrix::constant(Gamma));
  lp::LpOptions options = lp::default_options();
  options.tol = tol;
  const auto sol = lp::solve_lp(prog, options);
  switch (sol.status) {
    case lp::Status::kOptimal: {
      ContainmentCertificate cert{sol.at("lambda")};
      const double v = certificate_violation(X, Y, gamma, Gamma, cert);
      // The equality block is absolute, so allow for the size of its terms.
      const double scale = 1.0 + std::max(Y.A().cwiseAbs().maxCoeff() *
                                              (Gamma.size() ? Gamma.cwiseAbs().maxCoeff() : 0.0),
                                          0.0);
      if (v > 10.0 * tol * scale) {
        throw SolverError("containment certificate failed its recheck (violation " +
                          std::to_string(v) + ")");
      }
      cert.lambda = cert.lambda.cwiseMax(0.0);
      return cert;
    }
    case lp::Status::kInfeasible:
      return std::nullopt;
    default:
      throw SolverError("containment LP failed: " + std::string(lp::to_string(sol.status)) +
                        " " + sol.message);
  }
}

}  // namespace flexsum
