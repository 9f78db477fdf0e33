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


// Acceptance checks.  One PASS/FAIL line per criterion; pass criterion
// numbers on the command line to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "flexsum/containment.hpp"
#include "flexsum/disaggregation.hpp"
#include "flexsum/ev_model.hpp"
#include "flexsum/experiments.hpp"
#include "flexsum/inner.hpp"
#include "flexsum/oracle2d.hpp"
#include "flexsum/outer.hpp"
#include "support.hpp"

namespace flexsum {
namespace {

using oracle2d::Polygon;
using Clock = std::chrono::steady_clock;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Ordering gaps collected from every instance solved along the way.
struct Orderings {
  double homothet = -kInf;  // alpha(homothet) - alpha(structure)
  double trace = -kInf;     // T alpha(structure) - trace(affine)
  int instances = 0;

  void add(double h, double t) {
    homothet = std::max(homothet, h);
    trace = std::max(trace, t);
    ++instances;
  }
};

Orderings g_orderings;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double area_of(const Matrix& map, const BaseSet& base) {
  return std::abs(map.determinant()) *
         oracle2d::polygon_area(oracle2d::vertices_of_hpolygon(base.polytope));
}

// Point in a counterclockwise polygon up to `tol` (distance outside an edge).
bool in_polygon(const Polygon& poly, const oracle2d::Point& p, double tol) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    const oracle2d::Point e = b - a;
    const double len = e.norm();
    if (len == 0.0) continue;
    const double cross = e.x() * (p.y() - a.y()) - e.y() * (p.x() - a.x());
    if (cross / len < -tol) return false;
  }
  return true;
}

double scale_of(const Polygon& poly) {
  double s = 1.0;
  for (const auto& v : poly) s = std::max(s, v.cwiseAbs().maxCoeff());
  return s;
}

Outcome criterion1() {
  ScenarioConfig c;
  c.n = 5;
  c.T = 6;
  c.sigma = 0.0;
  c.seed = 1;
  c.homogenize_windows = true;
  const auto s = sample_scenario(c);
  const auto inner = solve_structure_preserving(s.models, s.base);
  const double r_dilate = volume_ratio(inner.map, dilate_outer(s.models, s.base).Q_map);
  const double r_lp = volume_ratio(inner.map, solve_outer_lp(s.models, s.base).Q_map);
  char buf[160];
  std::snprintf(buf, sizeof buf, "ratio(dilate)=%.12g ratio(lp)=%.12g", r_dilate, r_lp);
  return {std::abs(r_dilate - 1.0) <= 1e-6 && std::abs(r_lp - 1.0) <= 1e-4, buf};
}

Outcome criterion2() {
  SweepConfig c;
  c.n = 15;
  c.T = 12;
  c.delta = 1.0;
  c.sigmas = {0.0, 0.5, 1.0};
  c.trials = 20;
  c.seed = 2024;
  const auto r = heterogeneity_sweep(c);
  bool ok = true;
  std::string detail;
  int bad_rows = 0;
  for (const auto& row : r.rows) {
    if (row.status == "failed" || !(row.ratio >= 0.0 && row.ratio <= 1.0 + 1e-6)) ++bad_rows;
  }
  if (bad_rows > 0) {
    ok = false;
    detail += std::to_string(bad_rows) + " rows failed or out of [0,1+1e-6]; ";
  }
  std::map<std::pair<double, std::string>, double> mean;
  for (const auto& s : r.summary) mean[{s.sigma, s.method}] = s.mean;
  for (double sigma : c.sigmas) {
    const double st = mean[{sigma, "structure"}];
    const double af = mean[{sigma, "affine"}];
    const double ho = mean[{sigma, "homothet"}];
    char buf[160];
    std::snprintf(buf, sizeof buf, "sigma=%.2f structure=%.6g affine=%.6g homothet=%.6g; ",
                  sigma, st, af, ho);
    detail += buf;
    if (!(af - ho >= -0.01 && st - ho >= -0.01)) ok = false;
    if (sigma == 0.0 && !(std::abs(st - 1) <= 1e-4 && std::abs(af - 1) <= 1e-4 &&
                          std::abs(ho - 1) <= 1e-4)) {
      ok = false;
    }
  }
  g_orderings.add(r.worst_homothet_gap, r.worst_trace_gap);
  g_orderings.instances += static_cast<int>(r.rows.size() / 3) - 1;
  return {ok, detail};
}

// Two-set 2D instance: random batteries or axis-aligned boxes.
std::vector<BatteryModel> instance2d(std::mt19937_64& rng, bool boxes) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> w(0.2, 2.0);
  std::uniform_real_distribution<double> dd(0.5, 1.5);
  std::vector<BatteryModel> ms;
  const double delta = boxes ? 1.0 : dd(rng);
  for (int i = 0; i < 2; ++i) {
    if (boxes) {
      const double x = u(rng);
      const double y = u(rng);
      ms.push_back(testing::box_model2(x, x + w(rng), y, y + w(rng)));
    } else {
      ms.push_back(testing::random_battery(rng, 2, delta));
    }
  }
  return ms;
}

Outcome criterion3() {
  std::mt19937_64 rng(3);
  int inner_out = 0;
  int outer_miss = 0;
  int area_bad = 0;
  int box_bad = 0;
  double worst_box = 0.0;
  for (int k = 0; k < 200; ++k) {
    const bool boxes = k % 4 == 0;
    const auto ms = instance2d(rng, boxes);
    const BaseSet base = build_base_set(ms);
    std::vector<HPolytope> sets;
    for (const auto& m : ms) sets.push_back(battery_to_hpolytope(m));
    const auto exact = oracle2d::exact_sum(sets);
    const double tol = 1e-7 * scale_of(exact.vertices);
    const auto U0 = oracle2d::vertices_of_hpolygon(base.polytope);

    const auto st = solve_structure_preserving(ms, base);
    const auto af = solve_general_affine(ms, base);
    const auto ho = solve_homothet_baseline(ms, base);
    g_orderings.add(ho.objective - st.objective, 2 * st.objective - af.objective);
    for (const auto* r : {&st, &af, &ho}) {
      for (const auto& v : oracle2d::affine_image(U0, r->center, r->map)) {
        if (!in_polygon(exact.vertices, v, tol)) ++inner_out;
      }
      if (area_of(r->map, base) > exact.area * (1 + 1e-6)) ++area_bad;
    }
    const auto dil = dilate_outer(ms, base);
    const auto lp = solve_outer_lp(ms, base);
    for (const auto* o : {&dil, &lp}) {
      for (const auto& v : exact.vertices) {
        if (!o->contains(v, 1e-7)) ++outer_miss;
      }
      if (exact.area > area_of(o->Q_map, base) * (1 + 1e-6)) ++area_bad;
    }
    if (boxes) {
      const double rel = std::abs(area_of(st.map, base) - exact.area) / exact.area;
      worst_box = std::max(worst_box, rel);
      if (rel > 1e-6) ++box_bad;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "inner vertices outside=%d, oracle vertices outside outer=%d, area order "
                "violations=%d, box mismatches=%d (worst rel %.2e)",
                inner_out, outer_miss, area_bad, box_bad, worst_box);
  return {inner_out == 0 && outer_miss == 0 && area_bad == 0 && box_bad == 0, buf};
}

Outcome criterion4() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> s(0.1, 1.2);
  int mismatches = 0;
  int inside = 0;
  int resampled = 0;
  for (int k = 0; k < 200;) {
    const HPolytope X = battery_to_hpolytope(testing::random_battery(rng, 2, 1.0));
    const HPolytope Y = battery_to_hpolytope(testing::random_battery(rng, 2, 1.0));
    Matrix Gamma(2, 2);
    Gamma << u(rng), u(rng), u(rng), u(rng);
    Gamma *= s(rng);
    const Vector cx = chebyshev_ball(X).center;
    const Vector cy = chebyshev_ball(Y).center;
    const Vector gamma = cy - Gamma * cx + 0.3 * Vector{{u(rng), u(rng)}};
    double worst = -kInf;
    for (const auto& v : oracle2d::vertices_of_hpolygon(X)) {
      worst = std::max(worst, membership_violation(Y, gamma + Gamma * v));
    }
    // Cases within rounding of the boundary have no well-defined answer.
    if (std::abs(worst) < 1e-6) {
      ++resampled;
      continue;
    }
    const bool by_vertices = worst <= 0.0;
    const bool by_certificate = check_containment(X, Y, gamma, Gamma).has_value();
    if (by_vertices != by_certificate) ++mismatches;
    if (by_vertices) ++inside;
    ++k;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "mismatches=%d (contained %d of 200, %d borderline redrawn)",
                mismatches, inside, resampled);
  return {mismatches == 0, buf};
}

Outcome criterion5() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> sig(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    ScenarioConfig c;
    c.n = 6;
    c.T = 12;
    c.delta = 1.0;
    c.sigma = sig(rng);
    c.seed = 500 + k;
    c.homogenize_windows = k % 2 == 1;
    const auto s = sample_scenario(c);
    const auto af = solve_general_affine(s.models, s.base);
    const auto de = solve_decomposed(s.models, s.base);
    const auto st = solve_structure_preserving(s.models, s.base);
    const auto ho = solve_homothet_baseline(s.models, s.base);
    g_orderings.add(ho.objective - st.objective, c.T * st.objective - af.objective);
    worst = std::max(worst,
                     std::abs(af.objective - de.objective) / std::max(1.0, std::abs(af.objective)));
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "worst relative objective gap %.3e", worst);
  return {worst <= 1e-6, buf};
}

Outcome criterion6() {
  ScenarioConfig c;
  c.n = 100;
  c.T = 30;
  c.delta = 2.0 / 3.0;
  c.sigma = 1.0;
  c.seed = 6;
  const auto s = sample_scenario(c);
  const auto r = solve_decomposed(s.models, s.base);
  std::mt19937_64 rng(6);
  int infeasible = 0;
  double worst_sum = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Vector u = r.center + r.map * testing::random_point(rng, s.base.polytope);
    const auto parts = disaggregate(r, u);
    Vector sum = Vector::Zero(u.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (!contains_point(battery_to_hpolytope(s.models[i]), parts[i], 1e-7)) ++infeasible;
      sum += parts[i];
    }
    worst_sum = std::max(worst_sum, (sum - u).cwiseAbs().maxCoeff());
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "infeasible parts=%d, worst |sum - u|=%.3e, cond=%.3g",
                infeasible, worst_sum, condition_estimate(r.map));
  return {infeasible == 0 && worst_sum <= 1e-6, buf};
}

Outcome criterion7() {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%d instances: worst alpha(homothet)-alpha(structure)=%.3e, worst "
                "T*alpha-trace=%.3e",
                g_orderings.instances, g_orderings.homothet, g_orderings.trace);
  return {g_orderings.instances > 0 && g_orderings.homothet <= 1e-6 && g_orderings.trace <= 1e-6,
          buf};
}

Outcome criterion8() {
  ScenarioConfig c;
  c.n = 15;
  c.T = 12;
  c.sigma = 0.5;
  c.seed = 8;
  const auto s = sample_scenario(c);
  const auto o = solve_outer_lp(s.models, s.base);
  const double margin = dominance_margin(o.Z);
  std::mt19937_64 rng(8);
  std::vector<HPolytope> sets;
  for (const auto& m : s.models) sets.push_back(battery_to_hpolytope(m));
  int outside = 0;
  for (int k = 0; k < 500; ++k) {
    const Vector dir = testing::random_direction(rng, c.T);
    Vector p = Vector::Zero(c.T);
    for (const auto& set : sets) p += support_point(set, dir);
    if (!o.contains(p, 1e-7)) ++outside;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "dominance margin %.3e (epsilon %.1e), samples outside=%d",
                margin, o.epsilon, outside);
  return {margin >= o.epsilon - 1e-9 && outside == 0, buf};
}

Outcome criterion9() {
  ScenarioConfig c;
  c.n = 20;
  c.T = 12;
  c.delta = 20.0 / 12.0;
  c.sigma = 1.0;
  c.seed = 9;
  const auto s = sample_scenario(c);
  const auto r = solve_structure_preserving(s.models, s.base);
  const Vector peak = peak_power_profile(r);
  const double best = peak.cwiseAbs().maxCoeff();
  std::mt19937_64 rng(9);
  int beaten = 0;
  for (int k = 0; k < 100; ++k) {
    const Vector u = r.center + r.map * testing::random_point(rng, s.base.polytope);
    if (u.cwiseAbs().maxCoeff() < best - 1e-6) ++beaten;
  }
  const auto parts = disaggregate(r, peak);
  int infeasible = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!contains_point(battery_to_hpolytope(s.models[i]), parts[i], 1e-7)) ++infeasible;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "peak %.6g kW, random profiles beating it=%d, infeasible parts=%d",
                best, beaten, infeasible);
  return {beaten == 0 && infeasible == 0, buf};
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, inf when none
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace flexsum

int main(int argc, char** argv) {
  using namespace flexsum;
  const Criterion all[] = {
      {1, "homogeneous exactness", 10.0, criterion1},
      {2, "sweep trend", 600.0, criterion2},
      {3, "2D oracle equivalence", 120.0, criterion3},
      {4, "containment iff vertices", kInf, criterion4},
      {5, "decomposition equivalence", kInf, criterion5},
      {6, "disaggregation soundness", 300.0, criterion6},
      {7, "ordering inequalities", kInf, criterion7},
      {8, "outer LP validity", kInf, criterion8},
      {9, "peak power", kInf, criterion9},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs > c.time_limit) {
      out.pass = false;
      out.detail += " [over time limit]";
    }
    std::printf("%s %d %s (%.1fs): %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
