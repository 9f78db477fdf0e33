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


#include "flexsum/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "flexsum/disaggregation.hpp"
#include "flexsum/error.hpp"
#include "support.hpp"

namespace flexsum {
namespace {

// center + map * [-1, 1]^T.
TransformResult box_transform(const Vector& center, const Matrix& map) {
  const int T = static_cast<int>(center.size());
  const BatteryModel unit =
      testing::box_model(Vector::Constant(T, -1.0), Vector::Constant(T, 1.0));
  const BatteryModel ms[] = {unit};
  TransformResult r;
  r.base = build_base_set(ms);
  r.center = center;
  r.map = map;
  r.per_set.push_back(PerSetTransform{center, map, std::nullopt, 0.0});
  return r;
}

TEST(PeakPower, ZeroWhenOriginInside) {
  const auto r = box_transform(Vector{{0.5, -0.25, 0.0}}, Matrix::Identity(3, 3));
  const Vector u = peak_power_profile(r);
  EXPECT_LE(u.cwiseAbs().maxCoeff(), 1e-7);
}

TEST(PeakPower, PositiveBox) {
  // [2, 3]^3.
  const auto r = box_transform(Vector::Constant(3, 2.5), 0.5 * Matrix::Identity(3, 3));
  const Vector u = peak_power_profile(r);
  EXPECT_LE((u - Vector::Constant(3, 2.0)).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(PeakPower, ShapeMismatchThrows) {
  auto r = box_transform(Vector::Zero(2), Matrix::Identity(2, 2));
  r.center = Vector::Zero(3);
  EXPECT_THROW(peak_power_profile(r), DimensionError);
}

// Three sets gamma_i + I/3 U0 with distinct offsets.
TransformResult three_parts() {
  auto r = box_transform(Vector::Zero(2), Matrix::Identity(2, 2));
  r.per_set.clear();
  const Vector offsets[] = {Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}}, Vector{{-1.0, -1.0}}};
  for (const auto& g : offsets) {
    r.per_set.push_back(PerSetTransform{g, Matrix::Identity(2, 2) / 3.0, std::nullopt, 0.0});
  }
  return r;
}

TEST(GroupDisaggregation, GroupsFollowArrivalOrder) {
  const auto r = three_parts();
  const Vector u{{0.3, -0.6}};
  const auto parts = disaggregate(r, u);
  const int arrivals[] = {5, 1, 3};
  const auto groups = group_disaggregation(r, u, 2, arrivals);
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_LE((groups[0] - parts[1] - parts[2]).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((groups[1] - parts[0]).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GroupDisaggregation, WholeAndSingletonGroups) {
  const auto r = three_parts();
  const Vector u{{0.1, 0.2}};
  const int arrivals[] = {0, 0, 0};
  const auto whole = group_disaggregation(r, u, 3, arrivals);
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_LE((whole[0] - u).cwiseAbs().maxCoeff(), 1e-9);
  const auto single = group_disaggregation(r, u, 1, arrivals);
  const auto parts = disaggregate(r, u);
  ASSERT_EQ(single.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_LE((single[i] - parts[i]).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GroupDisaggregation, RejectsBadInput) {
  const auto r = three_parts();
  const int two[] = {0, 1};
  const int three[] = {0, 1, 2};
  EXPECT_THROW(group_disaggregation(r, Vector::Zero(2), 0, three), DomainError);
  EXPECT_THROW(group_disaggregation(r, Vector::Zero(2), 1, two), DimensionError);
}

TEST(PeakCsv, ColumnsAndCumulativeEnergy) {
  const Vector u{{1.0, 2.0, -0.5}};
  const Vector groups[] = {Vector{{0.5, 1.0, 0.0}}, Vector{{0.5, 1.0, -0.5}}};
  std::ostringstream out;
  write_peak_csv(out, u, 0.5, groups);
  EXPECT_EQ(out.str(),
            "period,aggregate_u,aggregate_x,group_1,group_2\n"
            "0,1,0.5,0.5,0.5\n"
            "1,2,1.5,1,1\n"
            "2,-0.5,1.25,0,-0.5\n");
}

SweepConfig tiny_sweep() {
  SweepConfig c;
  c.n = 3;
  c.T = 4;
  c.sigmas = {0.0, 0.5};
  c.trials = 2;
  c.seed = 11;
  return c;
}

TEST(Sweep, DeterministicAndOrdered) {
  const auto a = heterogeneity_sweep(tiny_sweep());
  const auto b = heterogeneity_sweep(tiny_sweep());
  std::ostringstream sa, sb;
  write_sweep_csv(sa, a);
  write_sweep_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  ASSERT_EQ(a.rows.size(), 2u * 2u * 3u);
  ASSERT_EQ(a.summary.size(), 2u * 3u);
  EXPECT_LE(a.worst_homothet_gap, 1e-6);
  EXPECT_LE(a.worst_trace_gap, 1e-6);
  for (const auto& row : a.rows) {
    EXPECT_NE(row.status, "failed") << row.method << " sigma " << row.sigma;
    EXPECT_LE(row.ratio, 1.0 + 1e-6);
    if (row.sigma == 0.0) EXPECT_NEAR(row.ratio, 1.0, 1e-6) << row.method;
  }
}

TEST(Sweep, TrialSeedsDiffer) {
  EXPECT_NE(trial_seed(0, 0, 0), trial_seed(0, 0, 1));
  EXPECT_NE(trial_seed(0, 0, 0), trial_seed(0, 1, 0));
  EXPECT_EQ(trial_seed(4, 2, 3), trial_seed(4, 2, 3));
}

TEST(Sweep, RejectsEmptyConfig) {
  auto c = tiny_sweep();
  c.trials = 0;
  EXPECT_THROW(heterogeneity_sweep(c), DomainError);
  c = tiny_sweep();
  c.sigmas.clear();
  EXPECT_THROW(heterogeneity_sweep(c), DomainError);
}

TEST(SweepCsv, SummaryHeader) {
  SweepResult r;
  r.summary.push_back(SweepSummary{0.5, "structure", 0.25, 0.0, 2, 0, 1});
  std::ostringstream out;
  write_sweep_summary_csv(out, r);
  EXPECT_EQ(out.str(),
            "sigma,method,mean_ratio,stderr,valid,singular,failed\n"
            "0.5,structure,0.25,0,2,0,1\n");
}

}  // namespace
}  // namespace flexsum
