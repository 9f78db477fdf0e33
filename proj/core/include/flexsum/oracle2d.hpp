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

// Exact two-dimensional geometry used as ground truth: vertex enumeration,
// Minkowski sums of convex polygons and areas.

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "flexsum/polytope.hpp"

namespace flexsum::oracle2d {

using Point = Eigen::Vector2d;
using Polygon = std::vector<Point>;  // counterclockwise, no repeated points

/// Counterclockwise vertex cycle of a bounded 2D H-polytope.  Redundant rows
/// are ignored.  Throws DomainError when p is empty, unbounded or not 2D.
Polygon vertices_of_hpolygon(const HPolytope& p, double tol = 1e-9);

/// Convex hull (counterclockwise, collinear points dropped).
Polygon convex_hull(std::vector<Point> points, double tol = 1e-12);

/// Sum of two convex counterclockwise polygons by merging edges in angle
/// order.  Points and segments are accepted too.
Polygon minkowski_sum_polygons(const Polygon& P, const Polygon& Q);

/// Shoelace area (>= 0).
double polygon_area(const Polygon& poly);

/// gamma + Gamma * poly.
Polygon affine_image(const Polygon& poly, const Eigen::Vector2d& gamma,
                     const Eigen::Matrix2d& Gamma);

struct SumResult {
  Polygon vertices;
  double area = 0.0;
};

SumResult exact_sum(std::span<const HPolytope> sets, double tol = 1e-9);

/// max over the polygon of c^T x.
double support_value(const Polygon& poly, const Point& c);

}  // namespace flexsum::oracle2d
