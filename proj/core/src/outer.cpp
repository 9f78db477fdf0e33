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

#include "flexsum/outer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "energy.hpp"
#include "flexsum/error.hpp"

namespace flexsum {

std::string_view to_string(OuterMethod method) {
  return method == OuterMethod::kDilate ? "dilate" : "lp";
}

OuterMethod parse_outer_method(std::string_view name) {
  if (name == "dilate") return OuterMethod::kDilate;
  if (name == "lp") return OuterMethod::kLp;
  throw DomainError("unknown outer method '" + std::string(name) + "'");
}

bool OuterResult::contains(const Vector& p, double tol) const {
  if (p.size() != Z.rows()) throw DimensionError("point dimension does not match outer set");
  return contains_point(base.polytope, Z * (p - center), tol);
}

double dominance_margin(const Matrix& Z) {
  double margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < Z.rows(); ++i) {
    const double off = Z.row(i).cwiseAbs().sum() - std::abs(Z(i, i));
    margin = std::min(margin, Z(i, i) - off);
  }
  return margin;
}

Matrix invert_map(const Matrix& Z) {
  if (Z.rows() != Z.cols()) throw DimensionError("invert_map needs a square matrix");
  if (Z.rows() == 0) return Z;
  if (!(dominance_margin(Z) > 0.0)) {
    throw DomainError("Z is not strictly diagonally dominant with positive diagonal");
  }
  Matrix Q = Z.partialPivLu().inverse();
  // One refinement step keeps ||Z Q - I|| near machine precision.
  const Matrix R = Matrix::Identity(Z.rows(), Z.cols()) - Z * Q;
  Q += Q * R;
  return Q;
}

OuterResult dilate_outer(std::span<const BatteryModel> models, const BaseSet& base) {
  detail::collect_rhs(models, base);
  const int T = base.horizon;
  const double N = static_cast<double>(models.size());
  OuterResult r;
  r.method = OuterMethod::kDilate;
  r.base = base;
  r.Z = Matrix::Identity(T, T) / N;
  r.Q_map = Matrix::Identity(T, T) * N;
  r.center = Vector::Zero(T);
  r.frame_origin = Vector::Zero(T);
  r.objective = T / N;
  return r;
}

namespace {

std::string idx(const char* prefix, std::size_t i) { return prefix + std::to_string(i); }

// Z is kept in u-coordinates; Zp = L Z D is what meets the energy rows.
// The sets are already shifted into the chosen frame and reduced.
lp::LpSolution solve_once(std::span<const detail::ReducedSet> sets,
                          const detail::ReducedSet& target, const BaseSet& base,
                          double epsilon, const lp::LpOptions& options) {
  const int T = base.horizon;
  const std::size_t N = sets.size();
  const Matrix D = build_difference_matrix(T, base.delta);

  lp::LinearProgram prog(lp::Sense::kMaximize);
  const auto Z = prog.add_block("Z", T, T);
  const auto Zp = prog.add_block("Zp", T, T);
  const auto S = prog.add_block("S", T, T, 0.0);
  for (int t = 0; t < T; ++t) prog.add_objective(Z(t, t), 1.0);

  lp::LinearExpr row;
  // D Zp - Z D = 0.
  for (int r = 0; r < T; ++r) {
    for (int c = 0; c < T; ++c) {
      row.clear();
      for (int k = std::max(0, r - 1); k <= r; ++k) row.push_back({Zp(k, c), D(r, k)});
      for (int k = c; k <= std::min(T - 1, c + 1); ++k) row.push_back({Z(r, k), -D(k, c)});
      prog.add_equal(row, 0.0);
    }
  }
  // |Z_ij| <= S_ij and Z_ii - sum_j S_ij >= epsilon.
  for (int r = 0; r < T; ++r) {
    row.clear();
    row.push_back({Z(r, r), 1.0});
    for (int c = 0; c < T; ++c) {
      if (c == r) continue;
      const lp::Term up[] = {{Z(r, c), 1.0}, {S(r, c), -1.0}};
      const lp::Term dn[] = {{Z(r, c), -1.0}, {S(r, c), -1.0}};
      prog.add_less_equal(up, 0.0);
      prog.add_less_equal(dn, 0.0);
      row.push_back({S(r, c), -1.0});
    }
    prog.add_greater_equal(row, epsilon);
  }
  // Flat coordinates: Z(:, t) = e_t / N.
  for (int t : detail::flat_coordinates(base)) {
    for (int r = 0; r < T; ++r) {
      const lp::Term pin[] = {{Z(r, t), 1.0}};
      prog.add_equal(pin, r == t ? 1.0 / static_cast<double>(N) : 0.0);
    }
  }
  std::vector<lp::VarBlock> g(N);
  for (std::size_t i = 0; i < N; ++i) {
    g[i] = prog.add_block(idx("g", i), T);
    encode_containment_rows(prog, sets[i].set, target.set,
                            AffineMatrix::variables(g[i]), AffineMatrix::variables(Zp),
                            idx("lambda", i));
  }
  for (int t = 0; t < T; ++t) {
    row.clear();
    for (std::size_t i = 0; i < N; ++i) row.push_back({g[i](t), 1.0});
    prog.add_equal(row, 0.0);
  }
  return lp::solve_lp(prog, options);
}

}  // namespace

OuterResult solve_outer_lp(std::span<const BatteryModel> models, const BaseSet& base,
                           const OuterOptions& options) {
  if (!(options.epsilon > 0.0)) throw DomainError("epsilon must be positive");
  auto rhs = detail::collect_rhs(models, base);
  const int T = base.horizon;
  const std::size_t N = models.size();
  const Matrix H = battery_matrix(T, base.delta);

  // H (u - c0) <= h - H c0 for every set.
  const Vector c0 = options.recenter ? chebyshev_ball(base.polytope, options.lp).center
                                     : Vector::Zero(T);
  const Vector shift = H * c0;
  std::vector<detail::ReducedSet> sets;
  for (auto& h : rhs) {
    const auto& reduced = detail::reduced_battery(T, base.delta, h, options.lp);
    h -= shift;
    sets.push_back(detail::with_rhs(reduced, h));
  }
  const Vector h0 = base.h0() - shift;
  const auto target =
      detail::with_rhs(detail::reduced_battery(T, base.delta, base.h0(), options.lp),
                       h0 / static_cast<double>(N));

  double epsilon = options.epsilon;
  for (int attempt = 0;; ++attempt) {
    const auto sol = solve_once(sets, target, base, epsilon, options.lp);
    if (sol.status == lp::Status::kInfeasible && attempt < options.max_retries) {
      epsilon *= 0.5;
      continue;
    }
    switch (sol.status) {
      case lp::Status::kOptimal:
        break;
      case lp::Status::kInfeasible:
        throw DomainError("outer LP infeasible down to epsilon " + std::to_string(epsilon));
      case lp::Status::kUnbounded:
        throw DomainError("outer LP unbounded (base set is not full-dimensional)");
      default:
        throw SolverError("outer LP: " + sol.message);
    }
    OuterResult r;
    r.method = OuterMethod::kLp;
    r.base = base;
    r.epsilon = epsilon;
    r.Z = sol.at("Z");
    r.Q_map = invert_map(r.Z);
    r.frame_origin = c0;
    r.center = static_cast<double>(N) * c0 - r.Q_map * c0;
    r.objective = sol.objective_value;
    const Matrix D = build_difference_matrix(T, base.delta);
    const HPolytope target_u(H, h0 / static_cast<double>(N));
    // The LP meets sum gamma_i = 0 only to its tolerance; spread the residual
    // so the sum is zero to rounding (certificates are rechecked below).
    std::vector<Vector> gammas;
    Vector residual = Vector::Zero(T);
    for (std::size_t i = 0; i < N; ++i) {
      gammas.push_back(D * sol.at(idx("g", i)));
      residual += gammas.back();
    }
    for (auto& g : gammas) g -= residual / static_cast<double>(N);
    for (std::size_t i = 0; i < N; ++i) {
      OuterPerSet p;
      p.gamma = std::move(gammas[i]);
      ContainmentCertificate cert{detail::expand_certificate(
          sets[i], target, sol.at(idx("lambda", i)).cwiseMax(0.0))};
      r.max_certificate_violation =
          std::max(r.max_certificate_violation,
                   certificate_violation(HPolytope(H, rhs[i]), target_u, p.gamma, r.Z, cert));
      if (options.keep_certificates) p.certificate = std::move(cert);
      r.per_set.push_back(std::move(p));
    }
    return r;
  }
}

}  // namespace flexsum
