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

// Small builders shared by the test binaries.

#pragma once

#include <random>
#include <vector>

#include "flexsum/oracle2d.hpp"
#include "flexsum/polytope.hpp"

namespace flexsum::testing {

inline HPolytope box(const Vector& lo, const Vector& hi) {
  const int n = static_cast<int>(lo.size());
  Matrix A(2 * n, n);
  A << Matrix::Identity(n, n), -Matrix::Identity(n, n);
  Vector b(2 * n);
  b << hi, -lo;
  return HPolytope(A, b);
}

inline HPolytope box2(double x0, double x1, double y0, double y1) {
  return box(Vector{{x0, y0}}, Vector{{x1, y1}});
}

// Power box [lo, hi] with energy rows far away (inactive).
inline BatteryModel box_model(const Vector& lo, const Vector& hi, double delta = 1.0,
                              double energy = 100.0) {
  const auto T = lo.size();
  return BatteryModel{lo, hi, Vector::Constant(T, -energy), Vector::Constant(T, energy), delta};
}

inline BatteryModel box_model2(double x0, double x1, double y0, double y1) {
  return box_model(Vector{{x0, y0}}, Vector{{x1, y1}});
}

// Random battery model with a known interior point: bounds are drawn around
// a random profile p and its cumulative energy.
inline BatteryModel random_battery(std::mt19937_64& rng, int T, double delta) {
  std::uniform_real_distribution<double> centre(-2.0, 2.0);
  std::uniform_real_distribution<double> width(0.3, 2.0);
  Vector p(T);
  for (int t = 0; t < T; ++t) p(t) = centre(rng);
  const Vector x = build_cumulative_matrix(T, delta) * p;
  BatteryModel m;
  m.delta = delta;
  m.u_lo.resize(T);
  m.u_hi.resize(T);
  m.x_lo.resize(T);
  m.x_hi.resize(T);
  for (int t = 0; t < T; ++t) {
    m.u_lo(t) = p(t) - width(rng);
    m.u_hi(t) = p(t) + width(rng);
    m.x_lo(t) = x(t) - 2.0 * width(rng);
    m.x_hi(t) = x(t) + 2.0 * width(rng);
  }
  return m;
}

inline Vector random_direction(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector c(n);
  for (int i = 0; i < n; ++i) c(i) = g(rng);
  return c;
}

// Random point of an H-polytope: convex combination of support points.
inline Vector random_point(std::mt19937_64& rng, const HPolytope& p, int k = 4) {
  std::uniform_real_distribution<double> w(0.0, 1.0);
  Vector x = Vector::Zero(p.dim());
  double total = 0.0;
  for (int j = 0; j < k; ++j) {
    const double a = w(rng) + 1e-3;
    x += a * support_point(p, random_direction(rng, p.dim()));
    total += a;
  }
  return x / total;
}

inline bool same_polygon(const oracle2d::Polygon& a, const oracle2d::Polygon& b,
                         double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t shift = 0; shift < a.size(); ++shift) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      ok = (a[i] - b[(i + shift) % b.size()]).cwiseAbs().maxCoeff() <= tol;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace flexsum::testing
