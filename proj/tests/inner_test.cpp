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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "flexsum/disaggregation.hpp"
#include "flexsum/error.hpp"
#include "flexsum/ev_model.hpp"
#include "flexsum/oracle2d.hpp"
#include "support.hpp"

namespace flexsum {
namespace {

using testing::box_model2;

struct Instance {
  std::vector<BatteryModel> models;
  BaseSet base;
};

Instance make(std::vector<BatteryModel> models) {
  Instance in{std::move(models), {}};
  in.base = build_base_set(in.models);
  return in;
}

Instance boxes() { return make({box_model2(0, 1, 0, 1), box_model2(0, 2, 0, 2)}); }
Instance rectangles() { return make({box_model2(0, 2, 0, 1), box_model2(0, 1, 0, 2)}); }

Instance ev_instance(int n, int T, double sigma, std::uint64_t seed, bool homogenize) {
  ScenarioConfig c;
  c.n = n;
  c.T = T;
  c.sigma = sigma;
  c.seed = seed;
  c.homogenize_windows = homogenize;
  auto s = sample_scenario(c);
  return Instance{s.models, s.base};
}

void expect_consistent(const TransformResult& r) {
  Vector c = Vector::Zero(r.center.size());
  Matrix M = Matrix::Zero(r.map.rows(), r.map.cols());
  for (const auto& p : r.per_set) {
    c += p.gamma;
    M += p.Gamma;
  }
  EXPECT_LE((c - r.center).cwiseAbs().maxCoeff(), 1e-9 * (1 + c.cwiseAbs().maxCoeff()));
  EXPECT_LE((M - r.map).cwiseAbs().maxCoeff(), 1e-9 * (1 + M.cwiseAbs().maxCoeff()));
  EXPECT_LE(r.max_certificate_violation, 1e-7);
}

double inner_area(const TransformResult& r) {
  const auto v = oracle2d::vertices_of_hpolygon(r.base.polytope);
  return std::abs(r.map.determinant()) * oracle2d::polygon_area(v);
}

TEST(MethodNames, RoundTrip) {
  for (auto m : {InnerMethod::kStructure, InnerMethod::kAffine, InnerMethod::kDecomposed,
                 InnerMethod::kHomothet}) {
    EXPECT_EQ(parse_inner_method(to_string(m)), m);
  }
  EXPECT_THROW(parse_inner_method("zonotope"), DomainError);
}

TEST(Structure, IdenticalModelsGiveN) {
  const auto in = ev_instance(4, 5, 0.0, 3, true);
  const auto r = solve_structure_preserving(in.models, in.base);
  EXPECT_NEAR(r.objective, 4.0, 1e-6);
  EXPECT_LE((r.map - 4.0 * Matrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-6);
  expect_consistent(r);
}

TEST(Structure, Boxes) {
  const auto in = boxes();
  const auto r = solve_structure_preserving(in.models, in.base);
  EXPECT_NEAR(r.objective, 2.0, 1e-7);
  EXPECT_NEAR(inner_area(r), 9.0, 1e-6);
  expect_consistent(r);
  EXPECT_EQ(r.method, InnerMethod::kStructure);
}

TEST(Structure, Rectangles) {
  const auto in = rectangles();
  const auto r = solve_structure_preserving(in.models, in.base);
  EXPECT_NEAR(r.objective, 2.0, 1e-7);
  EXPECT_NEAR(inner_area(r), 9.0, 1e-6);
  EXPECT_LE((r.map - 2.0 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-7);
  expect_consistent(r);
}

TEST(Affine, IdenticalModelsTraceAtLeastNT) {
  const auto in = ev_instance(3, 4, 0.0, 5, true);
  const auto r = solve_general_affine(in.models, in.base);
  EXPECT_GE(r.objective, 3.0 * 4.0 - 1e-6);
  expect_consistent(r);
}

TEST(Affine, Rectangles) {
  const auto in = rectangles();
  const auto r = solve_general_affine(in.models, in.base);
  EXPECT_NEAR(r.objective, 4.0, 1e-7);
  EXPECT_NEAR(std::abs(r.map.determinant()), 4.0, 1e-6);
  expect_consistent(r);
}

TEST(Decomposed, RectanglesPerSetMaps) {
  const auto in = rectangles();
  const auto r = solve_decomposed(in.models, in.base);
  EXPECT_NEAR(r.objective, 4.0, 1e-7);
  EXPECT_LE((r.map - 2.0 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-6);
  ASSERT_EQ(r.per_set.size(), 2u);
  EXPECT_NEAR(r.per_set[0].Gamma.trace(), 2.0, 1e-7);
  EXPECT_NEAR(r.per_set[1].Gamma.trace(), 2.0, 1e-7);
  expect_consistent(r);
}

TEST(Decomposed, SingleModelGetsIdentityTrace) {
  std::mt19937_64 rng(2);
  const auto in = make({testing::random_battery(rng, 4, 1.0)});
  const auto r = solve_decomposed(in.models, in.base);
  EXPECT_NEAR(r.objective, 4.0, 1e-6);
}

TEST(Decomposed, MatchesMonolithic) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto in = ev_instance(4, 6, 0.7, seed, false);
    const auto a = solve_general_affine(in.models, in.base);
    const auto d = solve_decomposed(in.models, in.base);
    EXPECT_NEAR(a.objective, d.objective, 1e-6 * std::abs(a.objective));
    expect_consistent(d);
  }
}

TEST(Homothet, Boxes) {
  const auto in = boxes();
  const auto r = solve_homothet_baseline(in.models, in.base);
  EXPECT_NEAR(r.per_set[0].scale, 2.0 / 3.0, 1e-7);
  EXPECT_NEAR(r.per_set[1].scale, 4.0 / 3.0, 1e-7);
  EXPECT_NEAR(r.objective, 2.0, 1e-7);
  expect_consistent(r);
}

TEST(Homothet, Rectangles) {
  const auto in = rectangles();
  const auto r = solve_homothet_baseline(in.models, in.base);
  EXPECT_NEAR(r.per_set[0].scale, 2.0 / 3.0, 1e-7);
  EXPECT_NEAR(r.per_set[1].scale, 2.0 / 3.0, 1e-7);
  EXPECT_NEAR(r.objective, 4.0 / 3.0, 1e-7);
  EXPECT_NEAR(inner_area(r), 4.0, 1e-6);
  for (const auto& p : r.per_set) {
    EXPECT_TRUE(p.Gamma.isApprox(p.scale * Matrix::Identity(2, 2)));
  }
}

TEST(Homothet, IdenticalGivesN) {
  const auto in = ev_instance(3, 4, 0.0, 9, true);
  EXPECT_NEAR(solve_homothet_baseline(in.models, in.base).objective, 3.0, 1e-6);
}

TEST(Homothet, LowerDimensionalSetGetsSingleton) {
  // Second set is a segment: only a point of the square base fits.
  const auto in = make({box_model2(0, 2, 0, 2), box_model2(0, 1, 0.5, 0.5)});
  const auto r = solve_homothet_baseline(in.models, in.base);
  EXPECT_DOUBLE_EQ(r.per_set[1].scale, 0.0);
  EXPECT_TRUE(r.per_set[1].Gamma.isZero());
  EXPECT_TRUE(contains_point(battery_to_hpolytope(in.models[1]), r.per_set[1].gamma, 1e-9));
  expect_consistent(r);
}

TEST(Inner, EmptyMemberIsDomainError) {
  BatteryModel bad = box_model2(0, 1, 0, 1);
  bad.x_lo(1) = 50.0;  // cannot reach
  bad.x_hi(1) = 60.0;
  const auto in = make({box_model2(0, 1, 0, 1), bad});
  EXPECT_THROW(solve_structure_preserving(in.models, in.base), DomainError);
  EXPECT_THROW(solve_decomposed(in.models, in.base), DomainError);
}

TEST(Inner, DispatchMatchesDirectCalls) {
  const auto in = boxes();
  EXPECT_NEAR(solve_inner(InnerMethod::kHomothet, in.models, in.base).objective, 2.0, 1e-7);
  EXPECT_NEAR(solve_inner(InnerMethod::kDecomposed, in.models, in.base).objective,
              solve_inner(InnerMethod::kAffine, in.models, in.base).objective, 1e-7);
}

TEST(Inner, FlatCoordinatesArePinned) {
  // Nobody can charge in period 0: U0 is flat there.
  ScenarioConfig c;
  c.n = 3;
  c.T = 6;
  c.sigma = 0.5;
  c.seed = 4;
  auto s = sample_scenario(c);
  for (auto& p : s.params) p.a = std::max(p.a, 1);
  rebuild_scenario(s);
  const auto r = solve_decomposed(s.models, s.base);
  EXPECT_TRUE(std::isfinite(r.objective));
  EXPECT_NEAR(r.map(0, 0), 3.0, 1e-7);
}

// Orderings and containment on random instances.
TEST(InnerProperty, OrderingsAndContainment) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 6; ++trial) {
    const int T = 3 + trial % 3;
    std::vector<BatteryModel> ms;
    for (int i = 0; i < 3; ++i) ms.push_back(testing::random_battery(rng, T, 1.0));
    const auto in = make(ms);
    const auto s = solve_structure_preserving(in.models, in.base);
    const auto a = solve_general_affine(in.models, in.base);
    const auto h = solve_homothet_baseline(in.models, in.base);
    EXPECT_LE(h.objective, s.objective + 1e-6);
    EXPECT_LE(T * s.objective, a.objective + 1e-6);
    for (const TransformResult* r : {&s, &a, &h}) {
      expect_consistent(*r);
      for (int k = 0; k < 30; ++k) {
        const Vector u0 = support_point(in.base.polytope, testing::random_direction(rng, T));
        const Vector u = r->center + r->map * u0;
        Vector sum = Vector::Zero(T);
        for (std::size_t i = 0; i < ms.size(); ++i) {
          const Vector ui = r->per_set[i].gamma + r->per_set[i].Gamma * u0;
          EXPECT_TRUE(contains_point(battery_to_hpolytope(ms[i]), ui, 1e-7));
          sum += ui;
        }
        EXPECT_LE((sum - u).cwiseAbs().maxCoeff(), 1e-9 * (1 + u.cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST(InnerProperty, BoxesAreExactIn2D) {
  std::mt19937_64 rng(78);
  std::uniform_real_distribution<double> w(0.2, 3.0), o(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<BatteryModel> ms;
    std::vector<HPolytope> sets;
    for (int i = 0; i < 3; ++i) {
      const double x0 = o(rng), y0 = o(rng);
      ms.push_back(box_model2(x0, x0 + w(rng), y0, y0 + w(rng)));
      sets.push_back(battery_to_hpolytope(ms.back()));
    }
    const auto in = make(ms);
    const auto r = solve_structure_preserving(in.models, in.base);
    const double exact = oracle2d::exact_sum(sets).area;
    EXPECT_NEAR(inner_area(r), exact, 1e-6 * exact);
  }
}

}  // namespace
}  // namespace flexsum
