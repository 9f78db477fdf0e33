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

#include <gtest/gtest.h>

#include <random>

#include "flexsum/error.hpp"
#include "support.hpp"

namespace flexsum::oracle2d {
namespace {

using flexsum::testing::box2;
using flexsum::testing::same_polygon;

Polygon square(double lo, double hi) {
  return {Point(lo, lo), Point(hi, lo), Point(hi, hi), Point(lo, hi)};
}

double signed_area(const Polygon& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& a = p[i];
    const auto& b = p[(i + 1) % p.size()];
    s += a.x() * b.y() - a.y() * b.x();
  }
  return 0.5 * s;
}

TEST(Vertices, UnitSquare) {
  const auto v = vertices_of_hpolygon(box2(0, 1, 0, 1));
  EXPECT_TRUE(same_polygon(v, square(0, 1), 1e-12));
  EXPECT_GT(signed_area(v), 0.0);
}

TEST(Vertices, Triangle) {
  Matrix A(3, 2);
  A << 1, 1, -1, 0, 0, -1;
  const auto v = vertices_of_hpolygon(HPolytope(A, Vector{{1.0, 0.0, 0.0}}));
  EXPECT_EQ(v.size(), 3u);
  EXPECT_NEAR(polygon_area(v), 0.5, 1e-12);
}

TEST(Vertices, RedundantRowIgnored) {
  Matrix A(5, 2);
  A << 1, 0, 0, 1, -1, 0, 0, -1, 1, 0;
  const auto v = vertices_of_hpolygon(HPolytope(A, Vector{{1.0, 1.0, 0.0, 0.0, 5.0}}));
  EXPECT_TRUE(same_polygon(v, square(0, 1), 1e-12));
}

TEST(Vertices, Errors) {
  EXPECT_THROW(vertices_of_hpolygon(box2(1, 0, 0, 1)), DomainError);  // empty
  Matrix A(2, 2);
  A << 1, 0, 0, 1;
  EXPECT_THROW(vertices_of_hpolygon(HPolytope(A, Vector{{1.0, 1.0}})), DomainError);
  EXPECT_THROW(vertices_of_hpolygon(box2(0, 1, 0, 0)), DomainError);  // flat
  EXPECT_THROW(vertices_of_hpolygon(flexsum::testing::box(Vector::Zero(3), Vector::Ones(3))),
               DomainError);
}

TEST(Minkowski, Boxes) {
  EXPECT_TRUE(same_polygon(minkowski_sum_polygons(square(0, 1), square(0, 2)), square(0, 3),
                           1e-12));
}

TEST(Minkowski, RectanglesCollapseToSquare) {
  const Polygon a = {Point(0, 0), Point(2, 0), Point(2, 1), Point(0, 1)};
  const Polygon b = {Point(0, 0), Point(1, 0), Point(1, 2), Point(0, 2)};
  const auto s = minkowski_sum_polygons(a, b);
  EXPECT_EQ(s.size(), 4u);
  EXPECT_TRUE(same_polygon(s, square(0, 3), 1e-12));
}

TEST(Minkowski, PointTranslates) {
  const Polygon p = {Point(0, 0), Point(2, 0), Point(1, 1)};
  const auto s = minkowski_sum_polygons(p, {Point(3, -1)});
  EXPECT_TRUE(same_polygon(s, affine_image(p, Eigen::Vector2d(3, -1), Eigen::Matrix2d::Identity()),
                           1e-12));
  // Segments as well.
  const auto seg = minkowski_sum_polygons(square(0, 1), {Point(0, 0), Point(1, 0)});
  EXPECT_NEAR(polygon_area(seg), 2.0, 1e-12);
}

TEST(Area, Examples) {
  EXPECT_DOUBLE_EQ(polygon_area(square(0, 1)), 1.0);
  EXPECT_DOUBLE_EQ(polygon_area(square(0, 3)), 9.0);
  EXPECT_DOUBLE_EQ(polygon_area({Point(0, 0), Point(1, 0), Point(0, 1)}), 0.5);
  EXPECT_DOUBLE_EQ(polygon_area({}), 0.0);
}

TEST(ExactSum, CopiesOfUnitSquare) {
  for (int n = 1; n <= 5; ++n) {
    std::vector<HPolytope> sets(n, box2(0, 1, 0, 1));
    const auto r = exact_sum(sets);
    EXPECT_NEAR(r.area, n * n, 1e-9);
  }
  const HPolytope boxes[] = {box2(0, 1, 0, 1), box2(0, 2, 0, 2)};
  EXPECT_NEAR(exact_sum(boxes).area, 9.0, 1e-12);
}

TEST(ConvexHull, DropsInteriorAndCollinear) {
  std::vector<Point> pts = {Point(0, 0), Point(1, 0), Point(2, 0), Point(2, 2),
                            Point(0, 2), Point(1, 1), Point(0, 1)};
  const auto h = convex_hull(pts);
  EXPECT_EQ(h.size(), 4u);
  EXPECT_GT(signed_area(h), 0.0);
}

Polygon random_polygon(std::mt19937_64& rng) {
  return vertices_of_hpolygon(
      battery_to_hpolytope(flexsum::testing::random_battery(rng, 2, 1.0)));
}

TEST(OracleProperty, CommutativeAndMonotone) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const auto P = random_polygon(rng);
    const auto Q = random_polygon(rng);
    const auto a = minkowski_sum_polygons(P, Q);
    const auto b = minkowski_sum_polygons(Q, P);
    EXPECT_TRUE(same_polygon(a, b, 1e-9));
    EXPECT_LE(a.size(), P.size() + Q.size());
    EXPECT_GE(polygon_area(a), std::max(polygon_area(P), polygon_area(Q)) - 1e-12);
    EXPECT_GT(signed_area(a), 0.0);
  }
}

TEST(OracleProperty, SupportFunctionsAdd) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 20; ++k) {
    const auto P = random_polygon(rng);
    const auto Q = random_polygon(rng);
    const auto S = minkowski_sum_polygons(P, Q);
    for (int j = 0; j < 100; ++j) {
      const Point c = flexsum::testing::random_direction(rng, 2);
      EXPECT_NEAR(support_value(S, c), support_value(P, c) + support_value(Q, c), 1e-9);
    }
  }
}

TEST(OracleProperty, VerticesMatchSupportLp) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const HPolytope p = battery_to_hpolytope(flexsum::testing::random_battery(rng, 2, 0.5));
    const auto v = vertices_of_hpolygon(p);
    for (const auto& x : v) EXPECT_TRUE(contains_point(p, x, 1e-9));
    for (int j = 0; j < 10; ++j) {
      const Vector c = flexsum::testing::random_direction(rng, 2);
      const Vector s = support_point(p, c);
      EXPECT_NEAR(support_value(v, c), c.dot(s), 1e-7);
    }
  }
}

}  // namespace
}  // namespace flexsum::oracle2d
