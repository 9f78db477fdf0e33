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

#include "energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "flexsum/error.hpp"

namespace flexsum::detail {

Matrix energy_matrix(int T, double delta) {
  const Matrix D = build_difference_matrix(T, delta);
  Matrix H(4 * T, T);
  H << Matrix::Identity(T, T), -Matrix::Identity(T, T), D, -D;
  return H;
}

std::vector<Vector> collect_rhs(std::span<const BatteryModel> models, const BaseSet& base) {
  if (models.empty()) throw DimensionError("need at least one battery model");
  const int T = base.horizon;
  if (base.polytope.dim() != T || base.polytope.num_rows() != 4 * T) {
    throw DimensionError("base set is not a battery polytope of horizon T");
  }
  std::vector<Vector> out;
  out.reserve(models.size());
  for (const auto& m : models) {
    if (m.horizon() != T) throw DimensionError("model horizon differs from the base set");
    if (m.delta != base.delta) throw DimensionError("model delta differs from the base set");
    out.push_back(battery_rhs(m));
  }
  return out;
}

std::vector<int> flat_coordinates(const BaseSet& base) {
  const int T = base.horizon;
  const Vector& h0 = base.h0();
  std::vector<int> flat;
  for (int t = 0; t < T; ++t) {
    const double hi = h0(2 * T + t);
    const double lo = -h0(3 * T + t);
    if (hi - lo <= 1e-9 * (1.0 + std::abs(hi) + std::abs(lo))) flat.push_back(t);
  }
  return flat;
}

ReducedSet drop_redundant_rows(const HPolytope& set, const lp::LpOptions& options) {
  const int m = set.num_rows();
  const int n = set.dim();
  const Matrix& A = set.A();
  const Vector& b = set.b();
  std::vector<bool> alive(m, true);
  // mu[j]: multipliers over rows alive when j was dropped.
  std::vector<Vector> mu(m);
  std::vector<int> order;

  lp::LpOptions small = options;
  small.algorithm = lp::Algorithm::kSimplex;
  for (int j = 0; j < m; ++j) {
    // min mu' b  s.t.  mu' A = a_j, mu >= 0 over the other live rows.
    lp::LinearProgram prog(lp::Sense::kMinimize);
    const auto v = prog.add_block("mu", m, 1, 0.0);
    lp::LinearExpr row;
    for (int k = 0; k < m; ++k) {
      if (k == j || !alive[k]) {
        prog.set_bounds(v(k), 0.0, 0.0);
      } else {
        prog.add_objective(v(k), b(k));
      }
    }
    for (int c = 0; c < n; ++c) {
      row.clear();
      for (int k = 0; k < m; ++k) {
        if (k != j && alive[k] && A(k, c) != 0.0) row.push_back({v(k), A(k, c)});
      }
      prog.add_equal(row, A(j, c));
    }
    const auto sol = lp::solve_lp(prog, small);
    if (sol.status == lp::Status::kUnbounded) {
      // Dual unbounded: the set is empty.  Leave it alone.
      ReducedSet out{set, {}, Matrix::Identity(m, m)};
      for (int k = 0; k < m; ++k) out.kept.push_back(k);
      return out;
    }
    if (!sol.optimal()) continue;
    if (sol.objective_value > b(j) + 1e-10 * (1.0 + std::abs(b(j)))) continue;
    Vector w = sol.at("mu").col(0).cwiseMax(0.0);
    // Residual of mu' A = a_j must be tiny, or the expansion would be off.
    if ((A.transpose() * w - A.row(j).transpose()).cwiseAbs().maxCoeff() >
        1e-10 * (1.0 + A.row(j).cwiseAbs().maxCoeff())) {
      continue;
    }
    alive[j] = false;
    mu[j] = std::move(w);
    order.push_back(j);
  }

  ReducedSet out;
  std::vector<int> position(m, -1);
  for (int k = 0; k < m; ++k) {
    if (alive[k]) {
      position[k] = static_cast<int>(out.kept.size());
      out.kept.push_back(k);
    }
  }
  const int r = static_cast<int>(out.kept.size());
  out.combination = Matrix::Zero(m, r);
  for (int k = 0; k < m; ++k) {
    if (alive[k]) out.combination(k, position[k]) = 1.0;
  }
  // A row dropped late only refers to rows that were alive then, none of
  // which were dropped before it; resolve latest first.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int j = *it;
    Vector row = Vector::Zero(r);
    for (int k = 0; k < m; ++k) {
      if (mu[j](k) != 0.0) row += mu[j](k) * out.combination.row(k).transpose();
    }
    out.combination.row(j) = row.transpose();
  }
  Matrix Ar(r, n);
  Vector br(r);
  for (int k = 0; k < r; ++k) {
    Ar.row(k) = A.row(out.kept[k]);
    br(k) = b(out.kept[k]);
  }
  out.set = HPolytope(std::move(Ar), std::move(br));
  return out;
}

const ReducedSet& reduced_battery(int T, double delta, const Vector& h,
                                  const lp::LpOptions& options) {
  using Key = std::tuple<int, double, std::vector<double>>;
  thread_local std::map<Key, ReducedSet> cache;
  Key key{T, delta, std::vector<double>(h.data(), h.data() + h.size())};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (cache.size() >= 4096) cache.clear();
  auto reduced = drop_redundant_rows(HPolytope(energy_matrix(T, delta), h), options);
  return cache.emplace(std::move(key), std::move(reduced)).first->second;
}

ReducedSet with_rhs(const ReducedSet& reduced, const Vector& full_rhs) {
  if (full_rhs.size() != reduced.combination.rows()) {
    throw DimensionError("rhs length does not match the unreduced set");
  }
  Vector b(reduced.kept.size());
  for (std::size_t k = 0; k < reduced.kept.size(); ++k) b(k) = full_rhs(reduced.kept[k]);
  return {HPolytope(reduced.set.A(), std::move(b)), reduced.kept, reduced.combination};
}

Matrix expand_certificate(const ReducedSet& x, const ReducedSet& y, const Matrix& lambda) {
  const Matrix rows = y.combination * lambda;  // m_y x kept_x
  Matrix full = Matrix::Zero(rows.rows(), x.combination.rows());
  for (std::size_t k = 0; k < x.kept.size(); ++k) full.col(x.kept[k]) = rows.col(k);
  return full;
}

}  // namespace flexsum::detail
