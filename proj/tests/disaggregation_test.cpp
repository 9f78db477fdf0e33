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

#include "flexsum/disaggregation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "flexsum/error.hpp"
#include "flexsum/ev_model.hpp"
#include "support.hpp"

namespace flexsum {
namespace {

using testing::box_model2;

// A transform over an arbitrary base box, for exercising the recovery paths.
TransformResult hand_transform(const Matrix& map, const Vector& center) {
  TransformResult r;
  const int T = static_cast<int>(map.rows());
  const BatteryModel base_model = testing::box_model(Vector::Zero(T), Vector::Constant(T, 2.0));
  const BatteryModel ms[] = {base_model};
  r.base = build_base_set(ms);
  r.center = center;
  r.map = map;
  r.per_set.push_back(PerSetTransform{center, map, std::nullopt, 0.0});
  return r;
}

TEST(ConditionEstimate, Basics) {
  EXPECT_DOUBLE_EQ(condition_estimate(Matrix::Identity(3, 3)), 1.0);
  EXPECT_TRUE(std::isinf(condition_estimate(Matrix::Ones(2, 2))));
  EXPECT_NEAR(condition_estimate(Matrix(Vector{{1.0, 1e-3}}.asDiagonal())), 1e3, 1e-9);
}

TEST(RecoverBasePoint, ScalarMap) {
  const auto r = hand_transform(3.0 * Matrix::Identity(2, 2), Vector::Zero(2));
  const Vector u0{{0.5, 1.5}};
  EXPECT_LE((recover_base_point(r, 3.0 * u0) - u0).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(RecoverBasePoint, ChebyshevCenterRoundTrip) {
  std::mt19937_64 rng(6);
  ScenarioConfig c;
  c.n = 3;
  c.T = 5;
  c.sigma = 0.6;
  c.seed = 6;
  const auto s = sample_scenario(c);
  const auto r = solve_decomposed(s.models, s.base);
  const Vector c0 = chebyshev_ball(s.base.polytope).center;
  const Vector u = r.center + r.map * c0;
  EXPECT_LE((recover_base_point(r, u) - c0).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(RecoverBasePoint, OutsidePointFails) {
  const auto r = hand_transform(Matrix::Identity(2, 2), Vector::Zero(2));
  EXPECT_THROW(recover_base_point(r, Vector{{3.0, 1.0}}), DomainError);
  try {
    recover_base_point(r, Vector{{3.0, 1.0}});
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "point outside inner approximation");
  }
  EXPECT_THROW(recover_base_point(r, Vector::Zero(3)), DimensionError);
}

TEST(RecoverBasePoint, SingularMapUsesClosestToCenter) {
  Matrix M = Matrix::Zero(2, 2);
  M(0, 0) = 1.0;
  const auto r = hand_transform(M, Vector::Zero(2));
  const Vector u0 = recover_base_point(r, Vector{{0.5, 0.0}});
  EXPECT_NEAR(u0(0), 0.5, 1e-8);
  // Any u0(1) within 0.5 of the center is as close as u0(0) allows.
  EXPECT_LE(std::abs(u0(1) - 1.0), 0.5 + 1e-8);
  EXPECT_THROW(recover_base_point(r, Vector{{0.5, 0.1}}), DomainError);
}

TEST(Disaggregate, IdenticalSetsSplitEvenly) {
  ScenarioConfig c;
  c.n = 4;
  c.T = 4;
  c.seed = 3;
  c.homogenize_windows = true;
  const auto s = sample_scenario(c);
  const auto r = solve_structure_preserving(s.models, s.base);
  const Vector v = chebyshev_ball(s.base.polytope).center;
  const auto parts = disaggregate(r, 4.0 * v);
  ASSERT_EQ(parts.size(), 4u);
  for (const auto& p : parts) EXPECT_LE((p - v).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Disaggregate, Rectangles) {
  const BatteryModel ms[] = {box_model2(0, 2, 0, 1), box_model2(0, 1, 0, 2)};
  const auto r = solve_decomposed(ms, build_base_set(ms));
  const auto parts = disaggregate(r, Vector{{3.0, 3.0}});
  EXPECT_LE((parts[0] - Vector{{2.0, 1.0}}).cwiseAbs().maxCoeff(), 1e-7);
  EXPECT_LE((parts[1] - Vector{{1.0, 2.0}}).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(DisaggregateProperty, FeasibleSumsAndAffine) {
  std::mt19937_64 rng(14);
  ScenarioConfig c;
  c.n = 6;
  c.T = 6;
  c.sigma = 0.7;
  c.seed = 14;
  const auto s = sample_scenario(c);
  for (auto m : {InnerMethod::kStructure, InnerMethod::kDecomposed, InnerMethod::kHomothet}) {
    const auto r = solve_inner(m, s.models, s.base);
    std::vector<Vector> us;
    for (int k = 0; k < 25; ++k) {
      const Vector u0 = testing::random_point(rng, s.base.polytope);
      const Vector u = r.center + r.map * u0;
      us.push_back(u);
      const auto parts = disaggregate(r, u);
      Vector sum = Vector::Zero(6);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        EXPECT_TRUE(contains_point(battery_to_hpolytope(s.models[i]), parts[i], 1e-7));
        sum += parts[i];
      }
      EXPECT_LE((sum - u).cwiseAbs().maxCoeff(), 1e-6 * (1 + u.cwiseAbs().maxCoeff()));
    }
    // Affine in u when the map is invertible.
    for (std::size_t k = 0; k + 1 < us.size(); ++k) {
      const double lam = 0.3;
      const auto a = disaggregate(r, us[k]);
      const auto b = disaggregate(r, us[k + 1]);
      const auto mix = disaggregate(r, lam * us[k] + (1 - lam) * us[k + 1]);
      for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_LE((mix[i] - (lam * a[i] + (1 - lam) * b[i])).cwiseAbs().maxCoeff(), 1e-9);
      }
    }
  }
}

}  // namespace
}  // namespace flexsum
