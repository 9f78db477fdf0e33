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

// Internal helpers: energy coordinates and redundant-row removal.

#include <gtest/gtest.h>

#include <random>

#include "energy.hpp"
#include "flexsum/containment.hpp"
#include "support.hpp"

namespace flexsum::detail {
namespace {

TEST(EnergyMatrix, IsBatteryMatrixTimesInverseCumulative) {
  for (double delta : {1.0, 2.0 / 3.0}) {
    const Matrix Hp = energy_matrix(6, delta);
    const Matrix H = battery_matrix(6, delta);
    EXPECT_LE((Hp - H * build_difference_matrix(6, delta)).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Reduction, DropsAnImpliedRow) {
  // Unit box plus x <= 5 and x + y <= 3.
  Matrix A(6, 2);
  A << 1, 0, 0, 1, -1, 0, 0, -1, 1, 0, 1, 1;
  const HPolytope p(A, Vector{{1.0, 1.0, 0.0, 0.0, 5.0, 3.0}});
  const auto r = drop_redundant_rows(p, lp::default_options());
  EXPECT_EQ(r.set.num_rows(), 4);
  // Every original row is a nonnegative combination of the kept rows with a
  // bound no tighter than the original.
  EXPECT_GE(r.combination.minCoeff(), 0.0);
  EXPECT_LE((r.combination * r.set.A() - A).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_TRUE(((r.combination * r.set.b()).array() <= p.b().array() + 1e-9).all());
}

TEST(Reduction, DuplicateRowsKeepOne) {
  Matrix A(5, 2);
  A << 1, 0, 1, 0, 0, 1, -1, 0, 0, -1;
  const HPolytope p(A, Vector{{1.0, 1.0, 1.0, 0.0, 0.0}});
  const auto r = drop_redundant_rows(p, lp::default_options());
  EXPECT_EQ(r.set.num_rows(), 4);
}

TEST(Reduction, EmptySetIsLeftAlone) {
  const HPolytope empty = testing::box2(1, 0, 0, 1);
  const auto r = drop_redundant_rows(empty, lp::default_options());
  EXPECT_EQ(r.set.num_rows(), empty.num_rows());
}

TEST(Reduction, BatteryMemoAndShift) {
  std::mt19937_64 rng(8);
  const BatteryModel m = testing::random_battery(rng, 6, 1.0);
  const Vector h = battery_rhs(m);
  const auto& a = reduced_battery(6, 1.0, h, lp::default_options());
  const auto& b = reduced_battery(6, 1.0, h, lp::default_options());
  EXPECT_EQ(&a, &b);
  const Matrix Hp = energy_matrix(6, 1.0);
  EXPECT_LE((a.combination * a.set.A() - Hp).cwiseAbs().maxCoeff(), 1e-9);
  // Shifted and scaled copies keep the same rows.
  const Vector v = testing::random_direction(rng, 6);
  const Vector moved = 0.5 * h - Hp * v;
  const auto shifted = with_rhs(a, moved);
  const auto direct = drop_redundant_rows(HPolytope(Hp, moved), lp::default_options());
  EXPECT_EQ(shifted.kept, direct.kept);
  EXPECT_TRUE(((shifted.combination * shifted.set.b()).array() <= moved.array() + 1e-8).all());
}

TEST(Reduction, ExpandedCertificateCertifiesOriginalSets) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 10; ++k) {
    const int T = 4;
    const Vector hx = battery_rhs(testing::random_battery(rng, T, 1.0));
    const Vector hy = battery_rhs(testing::random_battery(rng, T, 1.0));
    const Matrix Hp = energy_matrix(T, 1.0);
    const auto rx = drop_redundant_rows(HPolytope(Hp, hx), lp::default_options());
    const auto ry = drop_redundant_rows(HPolytope(Hp, hy), lp::default_options());
    // Small homothet of X centred in Y.
    const Matrix G = 0.2 * Matrix::Identity(T, T);
    const Vector g = chebyshev_ball(ry.set).center - G * chebyshev_ball(rx.set).center;
    const auto cert = check_containment(rx.set, ry.set, g, G);
    if (!cert) continue;
    const ContainmentCertificate full{expand_certificate(rx, ry, cert->lambda)};
    EXPECT_EQ(full.lambda.rows(), 4 * T);
    EXPECT_EQ(full.lambda.cols(), 4 * T);
    EXPECT_LE(certificate_violation(HPolytope(Hp, hx), HPolytope(Hp, hy), g, G, full), 1e-7);
  }
}

}  // namespace
}  // namespace flexsum::detail
