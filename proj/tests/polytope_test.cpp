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

#include "flexsum/polytope.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "flexsum/error.hpp"
#include "support.hpp"

namespace flexsum {
namespace {

using testing::box2;

TEST(CumulativeMatrix, Examples) {
  Matrix expect(3, 3);
  expect << 1, 0, 0, 1, 1, 0, 1, 1, 1;
  EXPECT_TRUE(build_cumulative_matrix(3, 1.0).isApprox(expect));
  EXPECT_DOUBLE_EQ(build_cumulative_matrix(1, 0.5)(0, 0), 0.5);
  const Matrix L = build_cumulative_matrix(2, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(L(0, 0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(L(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(L(1, 0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(L(1, 1), 2.0 / 3.0);
}

TEST(CumulativeMatrix, DifferenceMatrixIsInverse) {
  for (double delta : {1.0, 0.5, 2.0 / 3.0}) {
    const Matrix L = build_cumulative_matrix(7, delta);
    const Matrix D = build_difference_matrix(7, delta);
    EXPECT_LE((L * D - Matrix::Identity(7, 7)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(CumulativeMatrix, RunningSumProperty) {
  std::mt19937_64 rng(3);
  const double delta = 0.75;
  const Matrix L = build_cumulative_matrix(9, delta);
  for (int k = 0; k < 50; ++k) {
    const Vector u = testing::random_direction(rng, 9);
    const Vector x = L * u;
    double run = 0.0;
    for (int t = 0; t < 9; ++t) {
      run += delta * u(t);
      EXPECT_NEAR(x(t), run, 1e-12);
    }
  }
}

TEST(BatteryPolytope, Stacking) {
  BatteryModel m{Vector{{0.0}}, Vector{{2.0}}, Vector{{0.0}}, Vector{{2.0}}, 1.0};
  const HPolytope p = battery_to_hpolytope(m);
  Matrix A(4, 1);
  A << 1, -1, 1, -1;
  EXPECT_TRUE(p.A().isApprox(A));
  EXPECT_TRUE(p.b().isApprox(Vector{{2.0, 0.0, 2.0, 0.0}}));

  BatteryModel m2{Vector::Zero(2), Vector::Ones(2), Vector::Constant(2, -10.0),
                  Vector::Constant(2, 10.0), 1.0};
  Vector b(8);
  b << 10, 10, 10, 10, 1, 1, 0, 0;
  EXPECT_TRUE(battery_rhs(m2).isApprox(b));
}

TEST(BatteryPolytope, ValidateRejectsBadModels) {
  BatteryModel m{Vector::Zero(2), Vector::Ones(2), Vector::Zero(2), Vector::Ones(2), 1.0};
  EXPECT_NO_THROW(m.validate());
  auto crossed = m;
  crossed.u_lo(1) = 2.0;
  EXPECT_THROW(crossed.validate(), DomainError);
  auto bad_delta = m;
  bad_delta.delta = 0.0;
  EXPECT_THROW(bad_delta.validate(), DomainError);
  auto short_x = m;
  short_x.x_hi = Vector::Ones(3);
  EXPECT_THROW(short_x.validate(), DomainError);
}

TEST(BatteryPolytope, MembershipMatchesDirectCheck) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const int T = 5;
  const BatteryModel m = testing::random_battery(rng, T, 0.5);
  const HPolytope p = battery_to_hpolytope(m);
  const Matrix L = build_cumulative_matrix(T, 0.5);
  int inside = 0;
  for (int k = 0; k < 1000; ++k) {
    Vector x(T);
    for (int t = 0; t < T; ++t) x(t) = u(rng) * 0.6;
    const Vector e = L * x;
    const bool direct = (x.array() >= m.u_lo.array()).all() &&
                        (x.array() <= m.u_hi.array()).all() &&
                        (e.array() >= m.x_lo.array()).all() && (e.array() <= m.x_hi.array()).all();
    EXPECT_EQ(contains_point(p, x, 0.0), direct);
    inside += direct;
  }
  EXPECT_GT(inside, 0);
}

TEST(BaseSet, AveragesRightHandSides) {
  const BatteryModel a = testing::box_model2(0, 1, 0, 1);
  const BatteryModel b = testing::box_model2(0, 2, 0, 2);
  const BatteryModel ms[] = {a, b};
  const BaseSet base = build_base_set(ms);
  EXPECT_EQ(base.horizon, 2);
  EXPECT_DOUBLE_EQ(base.h0()(4), 1.5);
  EXPECT_DOUBLE_EQ(base.h0()(5), 1.5);
  EXPECT_DOUBLE_EQ(base.h0()(6), 0.0);
  EXPECT_TRUE(base.polytope.A().isApprox(battery_matrix(2, 1.0)));

  const BatteryModel same[] = {a, a, a};
  EXPECT_TRUE(build_base_set(same).h0().isApprox(battery_rhs(a)));
}

TEST(BaseSet, RejectsMismatch) {
  EXPECT_THROW(build_base_set(std::span<const BatteryModel>{}), DimensionError);
  const BatteryModel a = testing::box_model2(0, 1, 0, 1);
  BatteryModel b = a;
  b.delta = 0.5;
  const BatteryModel ms[] = {a, b};
  EXPECT_THROW(build_base_set(ms), DimensionError);
  const BatteryModel c = testing::box_model(Vector::Zero(3), Vector::Ones(3));
  const BatteryModel ms2[] = {a, c};
  EXPECT_THROW(build_base_set(ms2), DimensionError);
}

TEST(ContainsPoint, Examples) {
  const HPolytope unit = box2(0, 1, 0, 1);
  EXPECT_TRUE(contains_point(unit, Vector{{0.5, 0.5}}, 1e-9));
  EXPECT_FALSE(contains_point(unit, Vector{{1.001, 0.0}}, 1e-6));
  EXPECT_TRUE(contains_point(unit, Vector{{1.0, 1.0}}, 0.0));
  EXPECT_THROW(contains_point(unit, Vector::Zero(3), 1e-9), DimensionError);
  EXPECT_NEAR(membership_violation(unit, Vector{{1.5, 0.5}}), 0.25, 1e-15);
}

TEST(SupportPoint, Examples) {
  const HPolytope unit = box2(0, 1, 0, 1);
  EXPECT_TRUE(support_point(unit, Vector{{1.0, 1.0}}).isApprox(Vector{{1.0, 1.0}}));
  EXPECT_NEAR(support_point(unit, Vector{{-1.0, 0.0}})(0), 0.0, 1e-12);
  Matrix A(3, 2);
  A << 1, 1, -1, 0, 0, -1;
  const HPolytope tri(A, Vector{{1.0, 0.0, 0.0}});
  EXPECT_LE((support_point(tri, Vector{{1.0, 0.0}}) - Vector{{1.0, 0.0}}).norm(), 1e-9);
  Matrix half(1, 2);
  half << 1, 0;
  EXPECT_THROW(support_point(HPolytope(half, Vector{{1.0}}), Vector{{0.0, 1.0}}), DomainError);
}

TEST(Chebyshev, Examples) {
  EXPECT_NEAR(chebyshev_radius(box2(0, 2, 0, 2)), 1.0, 1e-9);
  EXPECT_NEAR(chebyshev_radius(box2(0, 1, 0, 0)), 0.0, 1e-9);
  Matrix A(3, 2);
  A << 1, 1, -1, 0, 0, -1;
  EXPECT_NEAR(chebyshev_radius(HPolytope(A, Vector{{2.0, 0.0, 0.0}})), 2.0 - std::sqrt(2.0),
              1e-9);
  EXPECT_THROW(chebyshev_radius(box2(1, 0, 0, 1)), DomainError);
  const auto ball = chebyshev_ball(box2(0, 2, 0, 4));
  EXPECT_NEAR(ball.radius, 1.0, 1e-9);
  EXPECT_NEAR(ball.center(0), 1.0, 1e-9);
}

TEST(LogAbsDet, Examples) {
  const auto a = log_abs_det(2.0 * Matrix::Identity(2, 2));
  EXPECT_EQ(a.sign, 1);
  EXPECT_NEAR(a.log_abs, std::log(4.0), 1e-15);
  Matrix ones = Matrix::Ones(2, 2);
  const auto b = log_abs_det(ones);
  EXPECT_EQ(b.sign, 0);
  EXPECT_TRUE(std::isinf(b.log_abs) && b.log_abs < 0);
  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  const auto c = log_abs_det(swap);
  EXPECT_EQ(c.sign, -1);
  EXPECT_NEAR(c.log_abs, 0.0, 1e-15);
}

TEST(LogAbsDet, LargeScaleDoesNotOverflow) {
  const auto r = log_abs_det(1e3 * Matrix::Identity(60, 60));
  EXPECT_EQ(r.sign, 1);
  EXPECT_NEAR(r.log_abs, 60 * std::log(1e3), 1e-9);
}

TEST(LogAbsDet, InverseProperty) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 30; ++k) {
    const int n = 2 + k % 6;
    Matrix M(n, n);
    for (int i = 0; i < n; ++i) M.col(i) = testing::random_direction(rng, n);
    M += 0.5 * Matrix::Identity(n, n);
    const auto a = log_abs_det(M);
    if (a.sign == 0) continue;
    const auto b = log_abs_det(M.inverse());
    EXPECT_NEAR(std::exp(a.log_abs + b.log_abs), 1.0, 1e-9);
    EXPECT_EQ(a.sign, b.sign);
  }
}

TEST(VolumeRatio, Examples) {
  const Matrix I2 = Matrix::Identity(2, 2);
  EXPECT_NEAR(volume_ratio(2 * I2, 2 * I2), 1.0, 1e-15);
  EXPECT_NEAR(volume_ratio(I2, 2 * I2), 0.25, 1e-15);
  EXPECT_NEAR(volume_ratio(Matrix(Vector{{2.0, 2.0}}.asDiagonal()), 2 * I2), 1.0, 1e-15);
  EXPECT_THROW(volume_ratio(I2, Matrix::Ones(2, 2)), DomainError);
  EXPECT_THROW(volume_ratio(I2, Matrix::Identity(3, 3)), DomainError);
  EXPECT_DOUBLE_EQ(volume_ratio(Matrix::Ones(2, 2), I2), 0.0);
}

TEST(VolumeRatio, LogAdditivity) {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 30; ++k) {
    const int n = 3;
    Matrix P(n, n), Q(n, n), R(n, n);
    for (int i = 0; i < n; ++i) {
      P.col(i) = testing::random_direction(rng, n);
      Q.col(i) = testing::random_direction(rng, n);
      R.col(i) = testing::random_direction(rng, n);
    }
    P += 2 * Matrix::Identity(n, n);
    Q += 2 * Matrix::Identity(n, n);
    R += 2 * Matrix::Identity(n, n);
    if (log_abs_det(Q).sign == 0 || log_abs_det(R).sign == 0) continue;
    const double lhs = volume_ratio(P, Q) * volume_ratio(Q, R);
    const double rhs = volume_ratio(P, R);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs));
  }
}

}  // namespace
}  // namespace flexsum
