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

#include "flexsum/inner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "energy.hpp"
#include "flexsum/error.hpp"

namespace flexsum {

std::string_view to_string(InnerMethod method) {
  switch (method) {
    case InnerMethod::kStructure:
      return "structure";
    case InnerMethod::kAffine:
      return "affine";
    case InnerMethod::kDecomposed:
      return "decomposed";
    case InnerMethod::kHomothet:
      return "homothet";
  }
  return "unknown";
}

InnerMethod parse_inner_method(std::string_view name) {
  if (name == "structure") return InnerMethod::kStructure;
  if (name == "affine") return InnerMethod::kAffine;
  if (name == "decomposed") return InnerMethod::kDecomposed;
  if (name == "homothet") return InnerMethod::kHomothet;
  throw DomainError("unknown inner method '" + std::string(name) + "'");
}

namespace {

// Shared pieces of every inner LP, in energy coordinates.
struct Setup {
  int T = 0;
  double delta = 1.0;
  Matrix L;
  Matrix D;
  HPolytope base_energy;                  // {y : H' y <= h0}
  detail::ReducedSet base_reduced;        // what the LPs see
  std::vector<detail::ReducedSet> sets_reduced;
  std::vector<HPolytope> sets;            // u-coordinates, for rechecks
  std::vector<int> flat;
};

Setup make_setup(std::span<const BatteryModel> models, const BaseSet& base,
                 const lp::LpOptions& options) {
  Setup s;
  const auto rhs = detail::collect_rhs(models, base);
  s.T = base.horizon;
  s.delta = base.delta;
  s.L = build_cumulative_matrix(s.T, s.delta);
  s.D = build_difference_matrix(s.T, s.delta);
  const Matrix Hp = detail::energy_matrix(s.T, s.delta);
  const Matrix H = battery_matrix(s.T, s.delta);
  s.base_energy = HPolytope(Hp, base.h0());
  s.base_reduced = detail::reduced_battery(s.T, s.delta, base.h0(), options);
  for (const auto& h : rhs) {
    s.sets_reduced.push_back(detail::reduced_battery(s.T, s.delta, h, options));
    s.sets.emplace_back(H, h);
  }
  s.flat = detail::flat_coordinates(base);
  return s;
}

std::string idx(const char* prefix, std::size_t i) { return prefix + std::to_string(i); }

// Gamma(:, t) = e_t for every flat t, written on Gamma' = L Gamma D.
void pin_flat_columns(lp::LinearProgram& prog, const lp::VarBlock& G, const Setup& s) {
  lp::LinearExpr row;
  for (int t : s.flat) {
    for (int r = 0; r < s.T; ++r) {
      row.clear();
      for (int c = t; c < s.T; ++c) row.push_back({G(r, c), 1.0});
      prog.add_equal(row, r >= t ? 1.0 : 0.0);
    }
  }
}

void throw_for_status(const lp::LpSolution& sol, const std::string& what) {
  switch (sol.status) {
    case lp::Status::kOptimal:
      return;
    case lp::Status::kInfeasible:
      throw DomainError(what + ": LP infeasible (an individual set may be empty)");
    case lp::Status::kUnbounded:
      throw DomainError(what + ": LP unbounded (base set is not full-dimensional)");
    case lp::Status::kNumericalFailure:
      throw SolverError(what + ": " + sol.message);
  }
}

// Maps an energy-coordinate solution back and rechecks its certificate.
PerSetTransform map_back(const Setup& s, std::size_t i, const Vector& g, const Matrix& G,
                         const Matrix& lambda, bool keep, double& worst) {
  PerSetTransform out;
  out.gamma = s.D * g;
  out.Gamma = s.D * G * s.L;
  ContainmentCertificate cert{
      detail::expand_certificate(s.base_reduced, s.sets_reduced[i], lambda.cwiseMax(0.0))};
  const HPolytope base_u(battery_matrix(s.T, s.delta), s.base_energy.b());
  worst = std::max(worst, certificate_violation(base_u, s.sets[i], out.gamma, out.Gamma, cert));
  if (keep) out.certificate = std::move(cert);
  out.scale = std::numeric_limits<double>::quiet_NaN();
  return out;
}

void assemble(TransformResult& r, const Setup& s) {
  r.center = Vector::Zero(s.T);
  r.map = Matrix::Zero(s.T, s.T);
  // Fixed index order keeps the sums reproducible.
  for (const auto& p : r.per_set) {
    r.center += p.gamma;
    r.map += p.Gamma;
  }
}

// One per-set LP: max trace(Gamma_i) or max alpha_i.
struct SingleResult {
  PerSetTransform transform;
  double objective = 0.0;
};

SingleResult solve_single(const Setup& s, std::size_t i, bool homothet,
                          const InnerOptions& options, double& worst) {
  lp::LinearProgram prog(lp::Sense::kMaximize);
  const auto g = prog.add_block("g", s.T);
  SingleResult out;
  if (homothet) {
    const auto a = prog.add_block("a", 1, 1, 0.0);
    prog.add_objective(a(0), 1.0);
    encode_containment_rows(prog, s.base_reduced.set, s.sets_reduced[i].set, AffineMatrix::variables(g),
                            AffineMatrix::scaled_identity(s.T, a(0)), "lambda");
    const auto sol = lp::solve_lp(prog, options.lp);
    throw_for_status(sol, "homothet LP for set " + std::to_string(i));
    double alpha = std::max(0.0, sol.value(a(0)));
    const int m = 4 * s.T;
    if (alpha <= options.epsilon_alpha) {
      // Only a point fits: use the Chebyshev center of U_i.
      alpha = 0.0;
      out.transform.gamma = chebyshev_ball(s.sets[i], options.lp).center;
      out.transform.Gamma = Matrix::Zero(s.T, s.T);
      ContainmentCertificate cert{Matrix::Zero(m, m)};
      const HPolytope base_u(battery_matrix(s.T, s.delta), s.base_energy.b());
      worst = std::max(worst, certificate_violation(base_u, s.sets[i], out.transform.gamma,
                                                    out.transform.Gamma, cert));
      if (options.keep_certificates) out.transform.certificate = std::move(cert);
    } else {
      out.transform = map_back(s, i, sol.at("g"), alpha * Matrix::Identity(s.T, s.T),
                               sol.at("lambda"), options.keep_certificates, worst);
      // Gamma' = alpha I maps back to alpha I exactly.
      out.transform.Gamma = alpha * Matrix::Identity(s.T, s.T);
    }
    out.transform.scale = alpha;
    out.objective = alpha;
    return out;
  }
  const auto G = prog.add_block("G", s.T, s.T);
  for (int t = 0; t < s.T; ++t) prog.add_objective(G(t, t), 1.0);
  encode_containment_rows(prog, s.base_reduced.set, s.sets_reduced[i].set, AffineMatrix::variables(g),
                          AffineMatrix::variables(G), "lambda");
  pin_flat_columns(prog, G, s);
  const auto sol = lp::solve_lp(prog, options.lp);
  throw_for_status(sol, "per-set LP for set " + std::to_string(i));
  out.transform = map_back(s, i, sol.at("g"), sol.at("G"), sol.at("lambda"),
                           options.keep_certificates, worst);
  out.objective = sol.objective_value;
  return out;
}

}  // namespace

TransformResult solve_structure_preserving(std::span<const BatteryModel> models,
                                           const BaseSet& base, const InnerOptions& options) {
  const Setup s = make_setup(models, base, options.lp);
  const std::size_t N = models.size();
  lp::LinearProgram prog(lp::Sense::kMaximize);
  const auto alpha = prog.add_block("alpha", 1, 1, options.epsilon_alpha);
  prog.add_objective(alpha(0), 1.0);
  std::vector<lp::VarBlock> G(N);
  for (std::size_t i = 0; i < N; ++i) {
    const auto g = prog.add_block(idx("g", i), s.T);
    G[i] = prog.add_block(idx("G", i), s.T, s.T);
    encode_containment_rows(prog, s.base_reduced.set, s.sets_reduced[i].set, AffineMatrix::variables(g),
                            AffineMatrix::variables(G[i]), idx("lambda", i));
  }
  // sum Gamma'_i = alpha I  (L (alpha I) D = alpha I).
  lp::LinearExpr row;
  for (int r = 0; r < s.T; ++r) {
    for (int c = 0; c < s.T; ++c) {
      row.clear();
      for (std::size_t i = 0; i < N; ++i) row.push_back({G[i](r, c), 1.0});
      if (r == c) row.push_back({alpha(0), -1.0});
      prog.add_equal(row, 0.0);
    }
  }
  const auto sol = lp::solve_lp(prog, options.lp);
  throw_for_status(sol, "structure-preserving LP");

  TransformResult r;
  r.method = InnerMethod::kStructure;
  r.base = base;
  r.objective = sol.value(alpha(0));
  for (std::size_t i = 0; i < N; ++i) {
    r.per_set.push_back(map_back(s, i, sol.at(idx("g", i)), sol.at(idx("G", i)),
                                 sol.at(idx("lambda", i)), options.keep_certificates,
                                 r.max_certificate_violation));
  }
  assemble(r, s);
  return r;
}

TransformResult solve_general_affine(std::span<const BatteryModel> models, const BaseSet& base,
                                     const InnerOptions& options) {
  const Setup s = make_setup(models, base, options.lp);
  const std::size_t N = models.size();
  lp::LinearProgram prog(lp::Sense::kMaximize);
  for (std::size_t i = 0; i < N; ++i) {
    const auto g = prog.add_block(idx("g", i), s.T);
    const auto G = prog.add_block(idx("G", i), s.T, s.T);
    for (int t = 0; t < s.T; ++t) prog.add_objective(G(t, t), 1.0);
    encode_containment_rows(prog, s.base_reduced.set, s.sets_reduced[i].set, AffineMatrix::variables(g),
                            AffineMatrix::variables(G), idx("lambda", i));
    pin_flat_columns(prog, G, s);
  }
  const auto sol = lp::solve_lp(prog, options.lp);
  throw_for_status(sol, "general affine LP");

  TransformResult r;
  r.method = InnerMethod::kAffine;
  r.base = base;
  r.objective = sol.objective_value;
  for (std::size_t i = 0; i < N; ++i) {
    r.per_set.push_back(map_back(s, i, sol.at(idx("g", i)), sol.at(idx("G", i)),
                                 sol.at(idx("lambda", i)), options.keep_certificates,
                                 r.max_certificate_violation));
  }
  assemble(r, s);
  return r;
}

TransformResult solve_decomposed(std::span<const BatteryModel> models, const BaseSet& base,
                                 const InnerOptions& options) {
  const Setup s = make_setup(models, base, options.lp);
  TransformResult r;
  r.method = InnerMethod::kDecomposed;
  r.base = base;
  for (std::size_t i = 0; i < models.size(); ++i) {
    auto one = solve_single(s, i, false, options, r.max_certificate_violation);
    r.objective += one.objective;
    r.per_set.push_back(std::move(one.transform));
  }
  assemble(r, s);
  return r;
}

TransformResult solve_homothet_baseline(std::span<const BatteryModel> models,
                                        const BaseSet& base, const InnerOptions& options) {
  const Setup s = make_setup(models, base, options.lp);
  TransformResult r;
  r.method = InnerMethod::kHomothet;
  r.base = base;
  for (std::size_t i = 0; i < models.size(); ++i) {
    auto one = solve_single(s, i, true, options, r.max_certificate_violation);
    r.objective += one.objective;
    r.per_set.push_back(std::move(one.transform));
  }
  assemble(r, s);
  return r;
}

TransformResult solve_inner(InnerMethod method, std::span<const BatteryModel> models,
                            const BaseSet& base, const InnerOptions& options) {
  switch (method) {
    case InnerMethod::kStructure:
      return solve_structure_preserving(models, base, options);
    case InnerMethod::kAffine:
      return solve_general_affine(models, base, options);
    case InnerMethod::kDecomposed:
      return solve_decomposed(models, base, options);
    case InnerMethod::kHomothet:
      return solve_homothet_baseline(models, base, options);
  }
  throw DomainError("unknown inner method");
}

}  // namespace flexsum
