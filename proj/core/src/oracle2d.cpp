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

#include "flexsum/oracle2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "flexsum/error.hpp"

namespace flexsum::oracle2d {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

// Bounded iff the row normals leave no angular gap of pi or more.
bool normals_bounded(const Matrix& A) {
  std::vector<double> angles;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    if (A.row(i).norm() > 0.0) angles.push_back(std::atan2(A(i, 1), A(i, 0)));
  }
  if (angles.size() < 3) return false;
  std::sort(angles.begin(), angles.end());
  double gap = angles.front() + 2.0 * std::numbers::pi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  return gap < std::numbers::pi - 1e-12;
}

// Rotates so the lowest (then leftmost) vertex comes first.
Polygon rotate_to_bottom(Polygon p) {
  auto it = std::min_element(p.begin(), p.end(), [](const Point& a, const Point& b) {
    return a.y() < b.y() || (a.y() == b.y() && a.x() < b.x());
  });
  std::rotate(p.begin(), it, p.end());
  return p;
}

}  // namespace

Polygon convex_hull(std::vector<Point> pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [tol](const Point& a, const Point& b) {
                          return (a - b).cwiseAbs().maxCoeff() <= tol;
                        }),
            pts.end());
  if (pts.size() <= 2) {
    if (pts.size() == 2 && (pts[0] - pts[1]).norm() <= tol) pts.pop_back();
    return pts;
  }
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double eps = tol * (1.0 + scale) * (1.0 + scale);
  Polygon hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

Polygon vertices_of_hpolygon(const HPolytope& p, double tol) {
  if (p.dim() != 2) throw DimensionError("vertices_of_hpolygon needs a 2D polytope");
  const Matrix& A = p.A();
  const Vector& b = p.b();
  if (!normals_bounded(A)) throw DomainError("polygon is unbounded");
  std::vector<Point> candidates;
  for (int i = 0; i < p.num_rows(); ++i) {
    for (int j = i + 1; j < p.num_rows(); ++j) {
      const double det = A(i, 0) * A(j, 1) - A(i, 1) * A(j, 0);
      const double size = A.row(i).norm() * A.row(j).norm();
      if (std::abs(det) <= 1e-14 * size) continue;
      const Point x((b(i) * A(j, 1) - A(i, 1) * b(j)) / det,
                    (A(i, 0) * b(j) - b(i) * A(j, 0)) / det);
      const Vector slack = A * x - b;
      bool inside = true;
      for (int k = 0; k < p.num_rows() && inside; ++k) {
        inside = slack(k) <= tol * (1.0 + std::abs(b(k))) * std::max(1.0, A.row(k).norm());
      }
      if (inside) candidates.push_back(x);
    }
  }
  if (candidates.empty()) throw DomainError("polygon is empty");
  Polygon hull = convex_hull(std::move(candidates), tol);
  if (hull.size() < 3 || polygon_area(hull) <= tol) {
    throw DomainError("polygon is not full-dimensional");
  }
  return hull;
}

Polygon minkowski_sum_polygons(const Polygon& P, const Polygon& Q) {
  if (P.empty() || Q.empty()) throw DomainError("Minkowski sum of an empty polygon");
  if (P.size() < 3 || Q.size() < 3) {
    std::vector<Point> pts;
    for (const auto& p : P) {
      for (const auto& q : Q) pts.push_back(p + q);
    }
    return convex_hull(std::move(pts));
  }
  const Polygon a = rotate_to_bottom(P);
  const Polygon b = rotate_to_bottom(Q);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<Point> out;
  out.reserve(n + m);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    out.push_back(a[i % n] + b[j % m]);
    const Point ea = a[(i + 1) % n] - a[i % n];
    const Point eb = b[(j + 1) % m] - b[j % m];
    const double c = cross(ea, eb);
    if (j >= m || (i < n && c > 0.0)) {
      ++i;
    } else if (i >= n || c < 0.0) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  // Drops collinear points left by parallel edges.
  return convex_hull(std::move(out));
}

double polygon_area(const Polygon& poly) {
  if (poly.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    twice += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return std::abs(0.5 * twice);
}

Polygon affine_image(const Polygon& poly, const Eigen::Vector2d& gamma,
                     const Eigen::Matrix2d& Gamma) {
  std::vector<Point> pts;
  pts.reserve(poly.size());
  for (const auto& p : poly) pts.push_back(gamma + Gamma * p);
  return convex_hull(std::move(pts));
}

SumResult exact_sum(std::span<const HPolytope> sets, double tol) {
  if (sets.empty()) throw DomainError("exact_sum of an empty list");
  SumResult r;
  r.vertices = vertices_of_hpolygon(sets.front(), tol);
  for (std::size_t i = 1; i < sets.size(); ++i) {
    r.vertices = minkowski_sum_polygons(r.vertices, vertices_of_hpolygon(sets[i], tol));
  }
  r.area = polygon_area(r.vertices);
  return r;
}

double support_value(const Polygon& poly, const Point& c) {
  if (poly.empty()) throw DomainError("support of an empty polygon");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : poly) best = std::max(best, c.dot(p));
  return best;
}

}  // namespace flexsum::oracle2d
