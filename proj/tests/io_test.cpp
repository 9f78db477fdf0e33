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


#include "flexsum/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>

#include "flexsum/error.hpp"
#include "support.hpp"

namespace flexsum {
namespace {

void expect_same(const Matrix& a, const Matrix& b) {
  ASSERT_EQ(a.rows(), b.rows());
  ASSERT_EQ(a.cols(), b.cols());
  for (Eigen::Index i = 0; i < a.size(); ++i) EXPECT_EQ(a.data()[i], b.data()[i]);
}

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const DomainError& e) {
    return e.what();
  }
  return "";
}

Scenario small_scenario() {
  ScenarioConfig c;
  c.n = 3;
  c.T = 6;
  c.sigma = 0.5;
  c.seed = 21;
  return sample_scenario(c);
}

TEST(IoRoundTrip, Scenario) {
  const auto s = small_scenario();
  const auto back = io::scenario_from_json(io::scenario_to_json(s));
  EXPECT_EQ(back.seed, s.seed);
  EXPECT_EQ(back.T, s.T);
  EXPECT_DOUBLE_EQ(back.clock_origin, s.clock_origin);
  ASSERT_EQ(back.models.size(), s.models.size());
  for (std::size_t i = 0; i < s.models.size(); ++i) {
    expect_same(back.models[i].x_lo, s.models[i].x_lo);
    expect_same(back.models[i].u_hi, s.models[i].u_hi);
  }
  expect_same(back.base.polytope.b(), s.base.polytope.b());
}

TEST(IoRoundTrip, ScenarioFromModelsOnly) {
  const BatteryModel ms[] = {testing::box_model2(0, 1, 0, 2), testing::box_model2(-1, 0, 0, 1)};
  Scenario s;
  s.models.assign(std::begin(ms), std::end(ms));
  s.T = 2;
  s.base = build_base_set(s.models);
  const auto back = io::scenario_from_json(io::scenario_to_json(s));
  ASSERT_EQ(back.models.size(), 2u);
  expect_same(back.models[1].u_lo, s.models[1].u_lo);
  expect_same(back.base.polytope.b(), s.base.polytope.b());
}

TEST(IoRoundTrip, PolytopeBatteryVector) {
  const auto p = testing::box2(-1.0 / 3.0, 0.1, 2.0, 1e300);
  const auto p2 = io::hpolytope_from_json(io::hpolytope_to_json(p));
  expect_same(p2.A(), p.A());
  expect_same(p2.b(), p.b());

  const auto m = testing::box_model2(0.1, 0.7, -0.3, 1.0 / 7.0);
  const auto m2 = io::battery_from_json(io::battery_to_json(m));
  expect_same(m2.u_hi, m.u_hi);
  expect_same(m2.x_lo, m.x_lo);

  const Vector v{{1.0 / 3.0, -2.5e-17, 4.0}};
  expect_same(io::vector_from_json(io::vector_to_json(v)), v);
}

TEST(IoRoundTrip, TransformAndOuter) {
  const auto s = small_scenario();
  const auto inner = solve_structure_preserving(s.models, s.base);
  const auto back = io::transform_from_json(io::transform_to_json(inner, true));
  EXPECT_EQ(back.method, inner.method);
  expect_same(back.map, inner.map);
  expect_same(back.center, inner.center);
  ASSERT_EQ(back.per_set.size(), inner.per_set.size());
  ASSERT_TRUE(back.per_set[0].certificate.has_value());
  expect_same(back.per_set[0].certificate->lambda, inner.per_set[0].certificate->lambda);

  const auto outer = solve_outer_lp(s.models, s.base);
  const auto oback = io::outer_from_json(io::outer_to_json(outer));
  expect_same(oback.Z, outer.Z);
  expect_same(oback.Q_map, outer.Q_map);
  expect_same(oback.center, outer.center);
}

TEST(IoCsv, Profiles) {
  const Vector rows[] = {Vector{{1.0, 0.1}}, Vector{{-2.0, 1.0 / 3.0}}};
  std::ostringstream out;
  io::write_profiles_csv(out, rows);
  EXPECT_EQ(out.str(), "1,0.10000000000000001\n-2,0.33333333333333331\n");
}

TEST(IoErrors, MalformedJsonNamesLine) {
  const auto msg = error_of([] { io::vector_from_json("[1,\n2,\n  oops]"); });
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(IoErrors, MissingAndMistypedFields) {
  auto msg = error_of([] { io::hpolytope_from_json(R"({"A": [[1]]})"); });
  EXPECT_NE(msg.find("'b'"), std::string::npos) << msg;
  msg = error_of([] { io::hpolytope_from_json(R"({"A": [[1, 2], [3]], "b": [1, 2]})"); });
  EXPECT_NE(msg.find("A[1]"), std::string::npos) << msg;
  msg = error_of([] { io::vector_from_json(R"([1, "x"])"); });
  EXPECT_NE(msg.find("[1]"), std::string::npos) << msg;
  msg = error_of([] {
    io::battery_from_json(R"({"u_lo": [0], "u_hi": [1], "x_lo": [0], "x_hi": [1]})");
  });
  EXPECT_NE(msg.find("delta"), std::string::npos) << msg;
  msg = error_of([] { io::scenario_from_json(R"({"models": []})"); });
  EXPECT_NE(msg.find("models"), std::string::npos) << msg;
}

TEST(IoErrors, InvalidModelIsRejected) {
  // u_lo > u_hi.
  const auto msg = error_of([] {
    io::battery_from_json(
        R"({"u_lo": [2], "u_hi": [1], "x_lo": [0], "x_hi": [1], "delta": 1})");
  });
  EXPECT_FALSE(msg.empty());
}

TEST(IoFiles, WriteAndRead) {
  const auto path = (std::filesystem::temp_directory_path() / "flexsum_io_test.json").string();
  io::write_file(path, "[1, 2]");
  EXPECT_EQ(io::read_file(path), "[1, 2]\n");
  std::filesystem::remove(path);
  EXPECT_THROW(io::read_file(path), DomainError);
}

}  // namespace
}  // namespace flexsum
