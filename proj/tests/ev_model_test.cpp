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

#include "flexsum/ev_model.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "flexsum/error.hpp"
#include "flexsum/io.hpp"

namespace flexsum {
namespace {

EvParams fig3() {
  EvParams p;
  p.T = 18;
  p.delta = 2.0 / 3.0;
  p.x_max = 60.0;
  p.x_init = 20.0;
  p.x_fin = 50.0;
  p.u_min = -10.0;
  p.u_max = 10.0;
  p.a = 2;
  p.d = 14;
  return p;
}

TEST(Limits, FigureThreeBounds) {
  const EvParams p = fig3();
  const BatteryModel m = limits_from_params(p);
  for (int t = 0; t < p.T; ++t) {
    const int te = t + 1;
    if (te >= p.a) EXPECT_DOUBLE_EQ(m.x_hi(t), 40.0) << t;
    if (te >= p.a && te <= p.d) EXPECT_DOUBLE_EQ(m.x_lo(t), -20.0) << t;
    if (te > p.d) EXPECT_DOUBLE_EQ(m.x_lo(t), 30.0) << t;
  }
}

TEST(Limits, PowerOnlyInsideWindow) {
  const EvParams p = fig3();
  const BatteryModel m = limits_from_params(p);
  for (int t = 0; t < p.T; ++t) {
    const bool in = t >= p.a && t <= p.d;
    EXPECT_DOUBLE_EQ(m.u_hi(t), in ? 10.0 : 0.0);
    EXPECT_DOUBLE_EQ(m.u_lo(t), in ? -10.0 : 0.0);
  }
}

TEST(Limits, FullWindowHugeCapacityIsABox) {
  EvParams p;
  p.T = 4;
  p.a = 0;
  p.d = 3;
  p.x_max = 1e6;
  p.x_init = 5e5;
  p.x_fin = 0.0;
  const BatteryModel m = limits_from_params(p);
  EXPECT_TRUE((m.u_lo.array() == -10.0).all());
  EXPECT_TRUE((m.u_hi.array() == 10.0).all());
  // Energy rows stay out of reach of any box profile.
  EXPECT_GE(m.x_hi.minCoeff(), 4 * 10.0);
  EXPECT_LE(m.x_lo.maxCoeff(), -4 * 10.0);
}

TEST(Limits, InfeasibleRequirement) {
  EvParams p;
  p.T = 4;
  p.a = 3;
  p.d = 3;
  p.x_init = 14;
  p.x_fin = 40;
  try {
    limits_from_params(p);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "infeasible energy requirement");
  }
  p.a = 4;
  EXPECT_THROW(limits_from_params(p), DomainError);
}

TEST(Clock, ToIndex) {
  EXPECT_EQ(clock_to_index(18.0, 15.0, 1.0, Rounding::kUp), 3);
  EXPECT_EQ(clock_to_index(15.0, 15.0, 1.0, Rounding::kDown), 0);
  EXPECT_EQ(clock_to_index(29.0, 18.0, 2.0 / 3.0, Rounding::kDown), 16);
  EXPECT_EQ(clock_to_index(29.0, 18.0, 2.0 / 3.0, Rounding::kUp), 17);
  // Exact grid points do not drift with rounding direction.
  EXPECT_EQ(clock_to_index(18.0 + 12 * (2.0 / 3.0), 18.0, 2.0 / 3.0, Rounding::kUp), 12);
  EXPECT_THROW(clock_to_index(14.0, 15.0, 1.0, Rounding::kUp), DomainError);
}

TEST(Clock, ParseAndFormat) {
  EXPECT_DOUBLE_EQ(parse_clock("3PM"), 15.0);
  EXPECT_DOUBLE_EQ(parse_clock("11AM"), 11.0);
  EXPECT_DOUBLE_EQ(parse_clock("12AM"), 0.0);
  EXPECT_DOUBLE_EQ(parse_clock("12PM"), 12.0);
  EXPECT_DOUBLE_EQ(parse_clock("15:00"), 15.0);
  EXPECT_DOUBLE_EQ(parse_clock("7:30PM"), 19.5);
  EXPECT_THROW(parse_clock("25:00"), DomainError);
  EXPECT_THROW(parse_clock("noon"), DomainError);
  EXPECT_EQ(format_clock(15.0), "15:00");
  EXPECT_EQ(format_clock(19.5), "19:30");
}

TEST(Sampler, SigmaZeroAndHomogenized) {
  ScenarioConfig c;
  c.n = 15;
  c.T = 12;
  c.seed = 7;
  c.homogenize_windows = true;
  const auto s = sample_scenario(c);
  ASSERT_EQ(s.models.size(), 15u);
  for (const auto& p : s.params) EXPECT_DOUBLE_EQ(p.x_fin, 40.0);
  for (const auto& m : s.models) {
    EXPECT_EQ(battery_rhs(m), battery_rhs(s.models[0]));
  }
  EXPECT_TRUE(s.base.h0().isApprox(battery_rhs(s.models[0])));
  EXPECT_EQ(s.T, 12);
  EXPECT_DOUBLE_EQ(s.delta, 1.0);
}

TEST(Sampler, DeterministicBytes) {
  ScenarioConfig c;
  c.n = 10;
  c.T = 12;
  c.sigma = 0.6;
  c.seed = 2024;
  EXPECT_EQ(io::scenario_to_json(sample_scenario(c)), io::scenario_to_json(sample_scenario(c)));
  ScenarioConfig d = c;
  d.seed = 2025;
  EXPECT_NE(io::scenario_to_json(sample_scenario(c)), io::scenario_to_json(sample_scenario(d)));
}

TEST(Sampler, PrefixStableAcrossPopulationSize) {
  // Keyed streams: EV i does not depend on how many EVs are drawn.
  ScenarioConfig c;
  c.n = 5;
  c.T = 12;
  c.sigma = 1.0;
  c.seed = 3;
  const auto small = sample_scenario(c);
  c.n = 20;
  const auto large = sample_scenario(c);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(small.params[i].a, large.params[i].a);
    EXPECT_EQ(small.params[i].x_fin, large.params[i].x_fin);
  }
}

TEST(SamplerProperty, TableOneRangesAndNonEmptySets) {
  for (double sigma : {0.0, 0.5, 1.0}) {
    ScenarioConfig c;
    c.n = 100;
    c.T = 30;
    c.delta = 2.0 / 3.0;
    c.sigma = sigma;
    c.seed = 99;
    const auto s = sample_scenario(c);
    for (const auto& p : s.params) {
      EXPECT_GE(p.x_fin, 40.0 - 30.0 * sigma - 1e-12);
      EXPECT_LE(p.x_fin, 40.0 + 30.0 * sigma + 1e-12);
      EXPECT_DOUBLE_EQ(p.x_max, 70.0);
      EXPECT_DOUBLE_EQ(p.x_init, 14.0);
      EXPECT_DOUBLE_EQ(p.u_max, 10.0);
      EXPECT_DOUBLE_EQ(p.u_min, -10.0);
      // Arrival 3PM..8PM on a 3PM grid of 40-minute periods.
      EXPECT_LE(p.a, clock_to_index(20.0, 15.0, c.delta, Rounding::kUp));
      EXPECT_GE(p.d, clock_to_index(29.0, 15.0, c.delta, Rounding::kDown));
      EXPECT_LE(p.d, c.T - 1);
      EXPECT_LE(p.x_fin - p.x_init, (p.d - p.a + 1) * p.delta * p.u_max + 1e-9);
    }
    for (const auto& m : s.models) {
      EXPECT_GT(chebyshev_radius(battery_to_hpolytope(m)), -1e-9);
    }
  }
}

TEST(Sampler, ShortHorizonsRejectAndCount) {
  ScenarioConfig c;
  c.n = 20;
  c.T = 6;
  c.sigma = 1.0;
  c.seed = 1;
  const auto s = sample_scenario(c);
  EXPECT_GT(s.rejections, 0);
  EXPECT_EQ(s.params.size(), 20u);
}

TEST(Sampler, BadConfig) {
  ScenarioConfig c;
  c.sigma = 1.5;
  EXPECT_THROW(sample_scenario(c), DomainError);
  c.sigma = 0.0;
  c.n = 0;
  EXPECT_THROW(sample_scenario(c), DomainError);
}

TEST(KeyedUniform, RangeAndIndependence) {
  double lo = 1.0, hi = 0.0, mean = 0.0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const double u = keyed_uniform(5, i, 1, 0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    mean += u;
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(mean / 10000, 0.5, 0.02);
  EXPECT_NE(keyed_uniform(5, 1, 1, 0), keyed_uniform(5, 1, 2, 0));
  EXPECT_EQ(keyed_uniform(5, 1, 1, 0), keyed_uniform(5, 1, 1, 0));
}

}  // namespace
}  // namespace flexsum
