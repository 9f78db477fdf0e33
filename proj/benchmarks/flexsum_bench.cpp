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


#include <benchmark/benchmark.h>

#include <vector>

#include "flexsum/ev_model.hpp"
#include "flexsum/experiments.hpp"
#include "flexsum/inner.hpp"
#include "flexsum/lp.hpp"
#include "flexsum/oracle2d.hpp"
#include "flexsum/outer.hpp"

namespace flexsum {
namespace {

Scenario scenario(int n, int T, double sigma) {
  ScenarioConfig c;
  c.n = n;
  c.T = T;
  c.sigma = sigma;
  c.seed = 42;
  c.homogenize_windows = true;
  return sample_scenario(c);
}

// Dense random LP: max sum x s.t. A x <= 1, 0 <= x <= 1.
void BM_DenseLp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  lp::LinearProgram prog(lp::Sense::kMaximize);
  const auto x = prog.add_block("x", n, 1, 0.0, 1.0);
  for (int j = 0; j < n; ++j) prog.add_objective(x(j), 1.0);
  lp::LinearExpr row;
  for (int i = 0; i < n; ++i) {
    row.clear();
    for (int j = 0; j < n; ++j) {
      row.push_back({x(j), 1.0 + static_cast<double>((i * 31 + j * 17) % 7)});
    }
    prog.add_less_equal(row, static_cast<double>(n));
  }
  for (auto _ : state) benchmark::DoNotOptimize(lp::solve_lp(prog).objective_value);
}
BENCHMARK(BM_DenseLp)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Inner(benchmark::State& state) {
  const auto method = static_cast<InnerMethod>(state.range(0));
  const auto s = scenario(static_cast<int>(state.range(1)), 12, 0.5);
  InnerOptions o;
  o.keep_certificates = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_inner(method, s.models, s.base, o).objective);
  }
  state.SetLabel(std::string(to_string(method)));
}
BENCHMARK(BM_Inner)
    ->Args({static_cast<int>(InnerMethod::kStructure), 5})
    ->Args({static_cast<int>(InnerMethod::kStructure), 15})
    ->Args({static_cast<int>(InnerMethod::kDecomposed), 15})
    ->Args({static_cast<int>(InnerMethod::kHomothet), 15})
    ->Unit(benchmark::kMillisecond);

void BM_OuterLp(benchmark::State& state) {
  const auto s = scenario(static_cast<int>(state.range(0)), 12, 0.5);
  OuterOptions o;
  o.keep_certificates = false;
  for (auto _ : state) benchmark::DoNotOptimize(solve_outer_lp(s.models, s.base, o).objective);
}
BENCHMARK(BM_OuterLp)->Arg(5)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_Oracle2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<HPolytope> sets;
  for (int i = 0; i < n; ++i) {
    BatteryModel m;
    m.delta = 1.0;
    m.u_lo = Vector{{-1.0 - 0.01 * i, -2.0}};
    m.u_hi = Vector{{1.0, 1.0 + 0.02 * i}};
    m.x_lo = Vector{{-1.0, -1.5 - 0.03 * i}};
    m.x_hi = Vector{{1.0, 2.0}};
    sets.push_back(battery_to_hpolytope(m));
  }
  for (auto _ : state) benchmark::DoNotOptimize(oracle2d::exact_sum(sets).area);
}
BENCHMARK(BM_Oracle2d)->Arg(2)->Arg(100)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace flexsum

BENCHMARK_MAIN();
