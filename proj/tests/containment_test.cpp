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

#include "flexsum/containment.hpp"

#include <gtest/gtest.h>

#include <random>

#include "flexsum/error.hpp"
#include "flexsum/oracle2d.hpp"
#include "support.hpp"

namespace flexsum {
namespace {

using testing::box2;

HPolytope triangle() {
  Matrix A(3, 2);
  A << 1, 1, -1, 0, 0, -1;
  return HPolytope(A, Vector{{1.0, 0.0, 0.0}});
}

TEST(EncodeContainment, BlockSizes) {
  {
    lp::LinearProgram prog;
    const auto g = prog.add_block("g", 2);
    const auto G = prog.add_block("G", 2, 2);
    const auto blocks = encode_containment_rows(prog, box2(0, 1, 0, 1), box2(0, 2, 0, 2),
                                                AffineMatrix::variables(g),
                                                AffineMatrix::variables(G));
    EXPECT_EQ(blocks.lambda.rows, 4);
    EXPECT_EQ(blocks.lambda.cols, 4);
    EXPECT_EQ(blocks.equality_rows, 8);
    EXPECT_EQ(blocks.inequality_rows, 4);
  }
  {
    lp::LinearProgram prog;
    const auto g = prog.add_block("g", 2);
    const auto G = prog.add_block("G", 2, 2);
    const auto blocks = encode_containment_rows(prog, triangle(), box2(0, 2, 0, 2),
                                                AffineMatrix::variables(g),
                                                AffineMatrix::variables(G));
    EXPECT_EQ(blocks.lambda.rows, 4);
    EXPECT_EQ(blocks.lambda.cols, 3);
  }
  {
    const int T = 5;
    const HPolytope X(battery_matrix(T, 1.0), Vector::Ones(4 * T));
    lp::LinearProgram prog;
    const auto g = prog.add_block("g", T);
    const auto G = prog.add_block("G", T, T);
    const auto blocks = encode_containment_rows(prog, X, X, AffineMatrix::variables(g),
                                                AffineMatrix::variables(G));
    EXPECT_EQ(blocks.lambda.rows, 4 * T);
    EXPECT_EQ(blocks.lambda.cols, 4 * T);
  }
}

TEST(EncodeContainment, DimensionMismatchThrows) {
  lp::LinearProgram prog;
  const auto g = prog.add_block("g", 3);
  const auto G = prog.add_block("G", 3, 3);
  EXPECT_THROW(encode_containment_rows(prog, box2(0, 1, 0, 1), box2(0, 1, 0, 1),
                                       AffineMatrix::variables(g), AffineMatrix::variables(G)),
               DimensionError);
}

TEST(CheckContainment, ScaledBox) {
  const auto cert =
      check_containment(box2(0, 1, 0, 1), box2(0, 2, 0, 2), Vector::Zero(2),
                        2.0 * Matrix::Identity(2, 2));
  ASSERT_TRUE(cert.has_value());
  EXPECT_LE(certificate_violation(box2(0, 1, 0, 1), box2(0, 2, 0, 2), Vector::Zero(2),
                                  2.0 * Matrix::Identity(2, 2), *cert),
            1e-7);
  // The hand certificate 2 I works too.
  EXPECT_LE(certificate_violation(box2(0, 1, 0, 1), box2(0, 2, 0, 2), Vector::Zero(2),
                                  2.0 * Matrix::Identity(2, 2),
                                  ContainmentCertificate{2.0 * Matrix::Identity(4, 4)}),
            0.0);
}

TEST(CheckContainment, TooLargeScaleFails) {
  EXPECT_FALSE(check_containment(box2(0, 1, 0, 1), box2(0, 2, 0, 2), Vector::Zero(2),
                                 3.0 * Matrix::Identity(2, 2))
                   .has_value());
}

TEST(CheckContainment, IdentityContainment) {
  std::mt19937_64 rng(1);
  const BatteryModel m = testing::random_battery(rng, 4, 1.0);
  const HPolytope X = battery_to_hpolytope(m);
  const auto cert = check_containment(X, X, Vector::Zero(4), Matrix::Identity(4, 4));
  ASSERT_TRUE(cert.has_value());
  EXPECT_LE(certificate_violation(X, X, Vector::Zero(4), Matrix::Identity(4, 4),
                                  ContainmentCertificate{Matrix::Identity(16, 16)}),
            0.0);
}

TEST(CheckContainment, TranslationMatters) {
  EXPECT_TRUE(check_containment(box2(0, 1, 0, 1), box2(0, 2, 0, 2), Vector{{1.0, 1.0}},
                                Matrix::Identity(2, 2))
                  .has_value());
  EXPECT_FALSE(check_containment(box2(0, 1, 0, 1), box2(0, 2, 0, 2), Vector{{1.1, 0.0}},
                                 Matrix::Identity(2, 2))
                   .has_value());
}

TEST(CertificateViolation, DetectsEachCondition) {
  const HPolytope X = box2(0, 1, 0, 1);
  const HPolytope Y = box2(0, 2, 0, 2);
  const Matrix G = 2.0 * Matrix::Identity(2, 2);
  Matrix lam = 2.0 * Matrix::Identity(4, 4);
  lam(0, 1) = -0.5;  // negative entry
  EXPECT_GE(certificate_violation(X, Y, Vector::Zero(2), G, ContainmentCertificate{lam}), 0.5);
  // Equality block off.
  EXPECT_GT(certificate_violation(X, Y, Vector::Zero(2), 2.5 * Matrix::Identity(2, 2),
                                  ContainmentCertificate{2.0 * Matrix::Identity(4, 4)}),
            0.1);
  // Inequality block off (translation pushes out).
  EXPECT_GT(certificate_violation(X, Y, Vector{{0.5, 0.0}}, G,
                                  ContainmentCertificate{2.0 * Matrix::Identity(4, 4)}),
            0.1);
}

// Soundness: a returned certificate means sampled points of X map into Y.
TEST(ContainmentProperty, Soundness) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int certified = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const HPolytope X = battery_to_hpolytope(testing::random_battery(rng, 3, 1.0));
    const HPolytope Y = battery_to_hpolytope(testing::random_battery(rng, 3, 1.0));
    Matrix G = 0.3 * Matrix::Identity(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) G(i, j) += 0.15 * u(rng);
    const Vector g = chebyshev_ball(Y).center - G * chebyshev_ball(X).center;
    const auto cert = check_containment(X, Y, g, G);
    if (!cert) continue;
    ++certified;
    for (int k = 0; k < 500 / 30 + 1; ++k) {
      const Vector x = support_point(X, testing::random_direction(rng, 3));
      EXPECT_TRUE(contains_point(Y, g + G * x, 1e-7));
    }
  }
  EXPECT_GT(certified, 5);
}

// Completeness in 2D against vertex enumeration.
TEST(ContainmentProperty, IffVerticesInside2D) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int yes = 0, no = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const HPolytope X = battery_to_hpolytope(testing::random_battery(rng, 2, 1.0));
    const HPolytope Y = battery_to_hpolytope(testing::random_battery(rng, 2, 1.0));
    Matrix G(2, 2);
    G << 0.6 + 0.4 * u(rng), 0.3 * u(rng), 0.3 * u(rng), 0.6 + 0.4 * u(rng);
    const Vector g = chebyshev_ball(Y).center - G * chebyshev_ball(X).center +
                     0.3 * testing::random_direction(rng, 2);
    bool inside = true;
    for (const auto& v : oracle2d::vertices_of_hpolygon(X)) {
      inside = inside && contains_point(Y, g + G * v, 1e-9);
    }
    const bool certified = check_containment(X, Y, g, G).has_value();
    EXPECT_EQ(certified, inside) << "trial " << trial;
    (inside ? yes : no)++;
  }
  EXPECT_GT(yes, 5);
  EXPECT_GT(no, 5);
}

}  // namespace
}  // namespace flexsum
