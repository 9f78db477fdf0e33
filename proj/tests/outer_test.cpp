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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "flexsum/error.hpp"
#include "flexsum/ev_model.hpp"
#include "flexsum/inner.hpp"
#include "flexsum/oracle2d.hpp"
#include "support.hpp"

namespace flexsum {
namespace {

using testing::box_model2;

double outer_area(const OuterResult& r) {
  return std::abs(r.Q_map.determinant()) *
         oracle2d::polygon_area(oracle2d::vertices_of_hpolygon(r.base.polytope));
}

Vector aggregate_support(std::span<const BatteryModel> ms, const Vector& c) {
  Vector p = Vector::Zero(c.size());
  for (const auto& m : ms) p += support_point(battery_to_hpolytope(m), c);
  return p;
}

TEST(InvertMap, Examples) {
  EXPECT_TRUE(invert_map(0.5 * Matrix::Identity(3, 3)).isApprox(2.0 * Matrix::Identity(3, 3)));
  Matrix Z(2, 2);
  Z << 2, 1, 0, 2;
  Matrix Q(2, 2);
  Q << 0.5, -0.25, 0, 0.5;
  EXPECT_LE((invert_map(Z) - Q).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((invert_map(Matrix::Identity(4, 4) / 100.0) - 100.0 * Matrix::Identity(4, 4))
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
  Matrix weak(2, 2);
  weak << 1, 1, 0, 1;
  EXPECT_THROW(invert_map(weak), DomainError);
  EXPECT_THROW(invert_map(-Matrix::Identity(2, 2)), DomainError);
}

TEST(InvertMap, ResidualOnRandomDominantMatrices) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const int n = 12;
    Matrix Z(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Z(i, j) = 1e-2 * u(rng);
    for (int i = 0; i < n; ++i) Z(i, i) = Z.row(i).cwiseAbs().sum() + 1e-6;
    EXPECT_GT(dominance_margin(Z), 0.0);
    const Matrix Q = invert_map(Z);
    EXPECT_LE((Z * Q - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Dilate, Boxes) {
  const BatteryModel ms[] = {box_model2(0, 1, 0, 1), box_model2(0, 2, 0, 2)};
  const auto base = build_base_set(ms);
  const auto r = dilate_outer(ms, base);
  EXPECT_TRUE(r.Q_map.isApprox(2.0 * Matrix::Identity(2, 2)));
  EXPECT_TRUE(r.Z.isApprox(0.5 * Matrix::Identity(2, 2)));
  EXPECT_TRUE(r.center.isZero());
  EXPECT_NEAR(outer_area(r), 9.0, 1e-9);
  EXPECT_EQ(r.method, OuterMethod::kDilate);
}

TEST(Dilate, SingleModelIsItself) {
  std::mt19937_64 rng(1);
  const BatteryModel ms[] = {testing::random_battery(rng, 4, 1.0)};
  const auto r = dilate_outer(ms, build_base_set(ms));
  EXPECT_TRUE(r.Q_map.isApprox(Matrix::Identity(4, 4)));
}

TEST(OuterLp, IdenticalSetsGiveNTimesBase) {
  ScenarioConfig c;
  c.n = 4;
  c.T = 5;
  c.seed = 12;
  c.homogenize_windows = true;
  const auto s = sample_scenario(c);
  const auto r = solve_outer_lp(s.models, s.base);
  EXPECT_LE((r.Z - 0.25 * Matrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-6);
  const auto inner = solve_structure_preserving(s.models, s.base);
  EXPECT_NEAR(volume_ratio(inner.map, r.Q_map), 1.0, 1e-4);
}

TEST(OuterLp, LiteralFrameWorksForIdenticalSets) {
  ScenarioConfig c;
  c.n = 3;
  c.T = 4;
  c.seed = 2;
  c.homogenize_windows = true;
  const auto s = sample_scenario(c);
  OuterOptions opt;
  opt.recenter = false;
  const auto r = solve_outer_lp(s.models, s.base, opt);
  EXPECT_TRUE(r.center.isZero());
  EXPECT_LE((r.Z - Matrix::Identity(4, 4) / 3.0).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(OuterLp, BoxesCoverTheSum) {
  const BatteryModel ms[] = {box_model2(0, 1, 0, 1), box_model2(0, 2, 0, 2)};
  const auto base = build_base_set(ms);
  const auto r = solve_outer_lp(ms, base);
  EXPECT_GE(outer_area(r), 9.0 * (1 - 1e-6));
  std::vector<HPolytope> sets;
  for (const auto& m : ms) sets.push_back(battery_to_hpolytope(m));
  for (const auto& v : oracle2d::exact_sum(sets).vertices) EXPECT_TRUE(r.contains(v, 1e-7));
}

TEST(OuterLp, InvariantsOnHeterogeneousScenario) {
  ScenarioConfig c;
  c.n = 5;
  c.T = 6;
  c.sigma = 0.8;
  c.seed = 31;
  const auto s = sample_scenario(c);
  const auto r = solve_outer_lp(s.models, s.base);
  EXPECT_GE(dominance_margin(r.Z), r.epsilon - 1e-9);
  EXPECT_NEAR(r.objective, r.Z.trace(), 1e-9);
  EXPECT_LE((r.Z * r.Q_map - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-8);
  Vector gsum = Vector::Zero(6);
  for (const auto& p : r.per_set) gsum += p.gamma;
  EXPECT_LE(gsum.cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE(r.max_certificate_violation, 1e-7);
  // center = (N I - Q) c0
  const Vector expect = 5.0 * r.frame_origin - r.Q_map * r.frame_origin;
  EXPECT_LE((r.center - expect).cwiseAbs().maxCoeff(), 1e-9 * (1 + expect.norm()));

  std::mt19937_64 rng(5);
  for (int k = 0; k < 500; ++k) {
    const Vector p = aggregate_support(s.models, testing::random_direction(rng, 6));
    ASSERT_TRUE(r.contains(p, 1e-7)) << "sample " << k;
  }
  for (auto m : {InnerMethod::kStructure, InnerMethod::kDecomposed, InnerMethod::kHomothet}) {
    const auto in = solve_inner(m, s.models, s.base);
    const double ratio = volume_ratio(in.map, r.Q_map);
    EXPECT_GE(ratio, 0.0);
    EXPECT_LE(ratio, 1.0 + 1e-6);
    EXPECT_LE(volume_ratio(in.map, dilate_outer(s.models, s.base).Q_map), 1.0 + 1e-6);
  }
}

TEST(OuterLp, MatchesDilationOnIdenticalSets) {
  ScenarioConfig c;
  c.n = 4;
  c.T = 5;
  c.sigma = 0.0;
  c.seed = 8;
  c.homogenize_windows = true;
  const auto s = sample_scenario(c);
  const auto lp = solve_outer_lp(s.models, s.base);
  const auto dil = dilate_outer(s.models, s.base);
  EXPECT_NEAR(lp.objective, dil.objective, 1e-7);
  EXPECT_NEAR(volume_ratio(lp.Q_map, dil.Q_map), 1.0, 1e-6);
}

TEST(OuterLp, ImpossibleMarginIsDomainError) {
  const BatteryModel ms[] = {box_model2(0, 1, 0, 1), box_model2(0, 2, 0, 2)};
  OuterOptions opt;
  opt.epsilon = 1e3;
  opt.max_retries = 2;
  EXPECT_THROW(solve_outer_lp(ms, build_base_set(ms), opt), DomainError);
  opt.epsilon = -1.0;
  EXPECT_THROW(solve_outer_lp(ms, build_base_set(ms), opt), DomainError);
}

TEST(OuterLp, MethodNames) {
  EXPECT_EQ(parse_outer_method("lp"), OuterMethod::kLp);
  EXPECT_EQ(parse_outer_method(to_string(OuterMethod::kDilate)), OuterMethod::kDilate);
  EXPECT_THROW(parse_outer_method("ellipsoid"), DomainError);
}

// Random 2D instances against the exact sum.
TEST(OuterProperty, AreasSandwichTheExactSum2D) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<BatteryModel> ms;
    std::vector<HPolytope> sets;
    for (int i = 0; i < 2; ++i) {
      ms.push_back(testing::random_battery(rng, 2, 1.0));
      sets.push_back(battery_to_hpolytope(ms.back()));
    }
    const auto base = build_base_set(ms);
    const auto exact = oracle2d::exact_sum(sets);
    for (const auto& r : {solve_outer_lp(ms, base), dilate_outer(ms, base)}) {
      EXPECT_GE(outer_area(r), exact.area * (1 - 1e-6));
      for (const auto& v : exact.vertices) EXPECT_TRUE(r.contains(v, 1e-7));
    }
  }
}

}  // namespace
}  // namespace flexsum
