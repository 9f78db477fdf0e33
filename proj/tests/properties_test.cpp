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


// Cross-module properties on random battery populations.

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "flexsum/disaggregation.hpp"
#include "flexsum/inner.hpp"
#include "flexsum/outer.hpp"
#include "support.hpp"

namespace flexsum {
namespace {

struct Population {
  std::vector<BatteryModel> models;
  BaseSet base;
};

Population make_population(std::uint64_t seed, int n, int T) {
  std::mt19937_64 rng(seed);
  Population p;
  std::uniform_real_distribution<double> dd(0.5, 1.5);
  const double delta = dd(rng);
  for (int i = 0; i < n; ++i) p.models.push_back(testing::random_battery(rng, T, delta));
  p.base = build_base_set(p.models);
  return p;
}

class RandomPopulation : public ::testing::TestWithParam<int> {};

TEST_P(RandomPopulation, InnerPointsDisaggregateIntoTheSets) {
  const auto pop = make_population(100 + GetParam(), 3, 4);
  std::mt19937_64 rng(GetParam());
  for (auto method : {InnerMethod::kStructure, InnerMethod::kDecomposed, InnerMethod::kHomothet}) {
    const auto r = solve_inner(method, pop.models, pop.base);
    EXPECT_LE(r.max_certificate_violation, 1e-6);
    for (int k = 0; k < 5; ++k) {
      const Vector u0 = testing::random_point(rng, pop.base.polytope);
      const Vector u = r.center + r.map * u0;
      const auto parts = disaggregate(r, u);
      Vector sum = Vector::Zero(u.size());
      for (std::size_t i = 0; i < parts.size(); ++i) {
        EXPECT_TRUE(contains_point(battery_to_hpolytope(pop.models[i]), parts[i], 1e-6))
            << to_string(method) << " set " << i;
        sum += parts[i];
      }
      EXPECT_LE((sum - u).cwiseAbs().maxCoeff(), 1e-7);
    }
  }
}

TEST_P(RandomPopulation, OuterCoversSumsAndInner) {
  const auto pop = make_population(200 + GetParam(), 3, 4);
  std::mt19937_64 rng(GetParam());
  const auto outer = solve_outer_lp(pop.models, pop.base);
  EXPECT_LE(outer.max_certificate_violation, 1e-6);
  for (int k = 0; k < 20; ++k) {
    Vector s = Vector::Zero(4);
    for (const auto& m : pop.models) s += testing::random_point(rng, battery_to_hpolytope(m));
    EXPECT_TRUE(outer.contains(s, 1e-6));
  }
  const auto inner = solve_structure_preserving(pop.models, pop.base);
  for (int k = 0; k < 20; ++k) {
    const Vector u0 = testing::random_point(rng, pop.base.polytope);
    EXPECT_TRUE(outer.contains(inner.center + inner.map * u0, 1e-6));
  }
  EXPECT_LE(volume_ratio(inner.map, outer.Q_map), 1.0 + 1e-9);
}

TEST_P(RandomPopulation, ObjectiveOrderings) {
  const auto pop = make_population(300 + GetParam(), 4, 5);
  const auto s = solve_structure_preserving(pop.models, pop.base);
  const auto a = solve_general_affine(pop.models, pop.base);
  const auto d = solve_decomposed(pop.models, pop.base);
  const auto h = solve_homothet_baseline(pop.models, pop.base);
  EXPECT_LE(h.objective, s.objective + 1e-7);
  EXPECT_LE(5 * s.objective, a.objective + 1e-6);
  EXPECT_NEAR(a.objective, d.objective, 1e-6 * (1.0 + std::abs(a.objective)));
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomPopulation, ::testing::Range(0, 8));

}  // namespace
}  // namespace flexsum
