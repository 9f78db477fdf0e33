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

// flexsum command-line tool.
//
// Exit codes: 0 success, 1 domain or input error, 2 solver failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flexsum/disaggregation.hpp"
#include "flexsum/error.hpp"
#include "flexsum/ev_model.hpp"
#include "flexsum/experiments.hpp"
#include "flexsum/inner.hpp"
#include "flexsum/io.hpp"
#include "flexsum/oracle2d.hpp"
#include "flexsum/outer.hpp"
#include "flexsum/polytope.hpp"

namespace {

using namespace flexsum;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    io::write_file(path, text);
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("bad number '" + item + "' in list");
    }
  }
  if (out.empty()) throw DomainError("empty list");
  return out;
}

// Random point of U0 as the support point of a random direction.
Vector random_base_point(const HPolytope& U0, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vector c(U0.dim());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = gauss(rng);
  return support_point(U0, c);
}

struct Args {
  // generate / sweep
  int n = 15;
  int T = 12;
  double delta = 1.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  bool homogenize = false;
  std::string clock_origin = "3PM";
  std::string sigmas = "0,0.25,0.5,0.75,1";
  int trials = 20;
  // files
  std::string scenario;
  std::string out;
  std::string summary;
  std::string inner;
  std::string outer;
  std::string result;
  std::string profile;
  // methods
  std::string method;
  double epsilon = 1e-6;
  std::string frame = "center";
  bool certificates = false;
  int group_size = 20;
  int samples = 500;
  double tol = 1e-7;
};

int run_generate(const Args& a) {
  ScenarioConfig c;
  c.n = a.n;
  c.T = a.T;
  c.delta = a.delta;
  c.sigma = a.sigma;
  c.seed = a.seed;
  c.homogenize_windows = a.homogenize;
  c.clock_origin = parse_clock(a.clock_origin);
  // Default plug-in and deadline windows, placed on the absolute axis after the origin.
  auto after_origin = [&](double h) { return h < c.clock_origin ? h + 24.0 : h; };
  c.arrival_lo = after_origin(15.0);
  c.arrival_hi = after_origin(20.0);
  c.deadline_lo = after_origin(5.0);
  c.deadline_hi = after_origin(11.0);
  const Scenario s = sample_scenario(c);
  write_text(a.out, io::scenario_to_json(s));
  std::cerr << "generated " << s.models.size() << " EVs, T=" << s.T << ", rejections "
            << s.rejections << "\n";
  return 0;
}

int run_inner(const Args& a) {
  const Scenario s = io::scenario_from_json(io::read_file(a.scenario));
  const auto r = solve_inner(parse_inner_method(a.method), s.models, s.base);
  write_text(a.out, io::transform_to_json(r, a.certificates));
  const auto ld = log_abs_det(r.map);
  std::cout << "method " << to_string(r.method) << " objective " << g17(r.objective)
            << " log|det P| " << g17(ld.log_abs) << "\n";
  return 0;
}

int run_outer(const Args& a) {
  const Scenario s = io::scenario_from_json(io::read_file(a.scenario));
  OuterResult r;
  if (parse_outer_method(a.method) == OuterMethod::kDilate) {
    r = dilate_outer(s.models, s.base);
  } else {
    OuterOptions o;
    o.epsilon = a.epsilon;
    o.recenter = a.frame == "center";
    r = solve_outer_lp(s.models, s.base, o);
  }
  write_text(a.out, io::outer_to_json(r, a.certificates));
  std::cout << "method " << to_string(r.method) << " epsilon " << g17(r.epsilon)
            << " log|det Q| " << g17(log_abs_det(r.Q_map).log_abs) << "\n";
  return 0;
}

int run_ratio(const Args& a) {
  const auto in = io::transform_from_json(io::read_file(a.inner));
  const auto out = io::outer_from_json(io::read_file(a.outer));
  std::cout << g17(volume_ratio(in.map, out.Q_map)) << "\n";
  return 0;
}

int run_disaggregate(const Args& a) {
  const auto r = io::transform_from_json(io::read_file(a.result));
  const Vector u = io::vector_from_json(io::read_file(a.profile));
  const auto parts = disaggregate(r, u, a.tol);
  std::ostringstream csv;
  io::write_profiles_csv(csv, parts);
  write_text(a.out, csv.str());
  Vector sum = Vector::Zero(u.size());
  for (const auto& p : parts) sum += p;
  std::cout << "disaggregated into " << parts.size() << " profiles, sum residual "
            << g17((sum - u).cwiseAbs().maxCoeff()) << "\n";
  return 0;
}

int run_peak(const Args& a) {
  const Scenario s = io::scenario_from_json(io::read_file(a.scenario));
  const auto r = solve_inner(parse_inner_method(a.method), s.models, s.base);
  const Vector u = peak_power_profile(r);
  std::vector<int> arrivals;
  for (std::size_t i = 0; i < s.models.size(); ++i) {
    arrivals.push_back(i < s.params.size() ? s.params[i].a : 0);
  }
  const auto groups = group_disaggregation(r, u, a.group_size, arrivals, a.tol);
  std::ostringstream csv;
  write_peak_csv(csv, u, s.delta, groups);
  write_text(a.out, csv.str());
  std::cout << "peak " << g17(u.cwiseAbs().maxCoeff()) << " kW over " << groups.size()
            << " groups\n";
  return 0;
}

int run_sweep(const Args& a) {
  SweepConfig c;
  c.n = a.n;
  c.T = a.T;
  c.delta = a.delta;
  c.sigmas = parse_list(a.sigmas);
  c.trials = a.trials;
  c.seed = a.seed;
  c.epsilon = a.epsilon;
  const auto r = heterogeneity_sweep(c);
  std::ostringstream rows;
  write_sweep_csv(rows, r);
  write_text(a.out, rows.str());
  std::ostringstream sum;
  write_sweep_summary_csv(sum, r);
  if (!a.summary.empty()) io::write_file(a.summary, sum.str());
  std::cout << sum.str();
  return 0;
}

int run_oracle(const Args& a) {
  const Scenario s = io::scenario_from_json(io::read_file(a.scenario));
  if (s.T != 2) throw DomainError("oracle2d needs a scenario with T = 2");
  std::vector<HPolytope> sets;
  for (const auto& m : s.models) sets.push_back(battery_to_hpolytope(m));
  const auto sum = oracle2d::exact_sum(sets);
  std::ostringstream csv;
  csv << "x,y\n";
  for (const auto& v : sum.vertices) csv << g17(v.x()) << ',' << g17(v.y()) << '\n';
  write_text(a.out, csv.str());
  std::cout << "oracle area " << g17(sum.area) << "\n";
  const double base_area = oracle2d::polygon_area(oracle2d::vertices_of_hpolygon(s.base.polytope));
  if (!a.inner.empty()) {
    const auto r = io::transform_from_json(io::read_file(a.inner));
    std::cout << "inner area " << g17(std::abs(r.map.determinant()) * base_area) << "\n";
  }
  if (!a.outer.empty()) {
    const auto r = io::outer_from_json(io::read_file(a.outer));
    std::cout << "outer area " << g17(std::abs(r.Q_map.determinant()) * base_area) << "\n";
  }
  return 0;
}

int run_validate(const Args& a) {
  const Scenario s = io::scenario_from_json(io::read_file(a.scenario));
  const auto r = io::transform_from_json(io::read_file(a.result));
  if (r.per_set.size() != s.models.size()) {
    throw DimensionError("result and scenario disagree on the number of sets");
  }
  double min_radius = std::numeric_limits<double>::infinity();
  for (const auto& m : s.models) {
    min_radius = std::min(min_radius, chebyshev_radius(battery_to_hpolytope(m)));
  }
  std::mt19937_64 rng(a.seed);
  double worst_member = -std::numeric_limits<double>::infinity();
  double worst_sum = 0.0;
  for (int k = 0; k < a.samples; ++k) {
    const Vector u0 = random_base_point(r.base.polytope, rng);
    const Vector u = r.center + r.map * u0;
    const auto parts = disaggregate(r, u, a.tol);
    Vector sum = Vector::Zero(u.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      worst_member =
          std::max(worst_member, membership_violation(battery_to_hpolytope(s.models[i]), parts[i]));
      sum += parts[i];
    }
    worst_sum = std::max(worst_sum, (sum - u).cwiseAbs().maxCoeff() / (1.0 + u.cwiseAbs().maxCoeff()));
  }
  std::cout << "samples " << a.samples << "\n"
            << "max membership violation " << g17(std::max(0.0, worst_member)) << "\n"
            << "max sum residual " << g17(worst_sum) << "\n"
            << "min chebyshev radius " << g17(min_radius) << "\n"
            << "certificate violation " << g17(r.max_certificate_violation) << "\n";
  const bool ok = worst_member <= a.tol && worst_sum <= 1e-6;
  std::cout << (ok ? "valid" : "INVALID") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inner and outer approximations of sums of battery flexibility sets"};
  app.require_subcommand(1);
  Args a;

  auto* gen = app.add_subcommand("generate", "Sample an EV scenario (JSON)");
  gen->add_option("--n", a.n, "Number of EVs");
  gen->add_option("--t", a.T, "Number of periods");
  gen->add_option("--delta", a.delta, "Period length in hours");
  gen->add_option("--sigma", a.sigma, "Heterogeneity in [0, 1]");
  gen->add_option("--seed", a.seed, "RNG seed")->required();
  gen->add_flag("--homogenize-windows", a.homogenize, "Plug-in at 0, deadline at T-1");
  gen->add_option("--clock-origin", a.clock_origin, "Wall-clock time of period 0");
  gen->add_option("--out", a.out, "Output file (default stdout)");

  auto* inner = app.add_subcommand("inner", "Inner approximation");
  inner->add_option("--scenario", a.scenario)->required();
  inner->add_option("--method", a.method)
      ->required()
      ->check(CLI::IsMember({"structure", "affine", "decomposed", "homothet"}));
  inner->add_option("--out", a.out);
  inner->add_flag("--certificates", a.certificates, "Store Lambda matrices");

  auto* outer = app.add_subcommand("outer", "Outer approximation");
  outer->add_option("--scenario", a.scenario)->required();
  outer->add_option("--method", a.method)->required()->check(CLI::IsMember({"dilate", "lp"}));
  outer->add_option("--epsilon", a.epsilon, "Diagonal dominance margin");
  outer->add_option("--frame", a.frame, "Origin of the lp conditions: center of U0 or origin")
      ->check(CLI::IsMember({"center", "origin"}));
  outer->add_option("--out", a.out);
  outer->add_flag("--certificates", a.certificates);

  auto* ratio = app.add_subcommand("ratio", "Volume ratio |det P| / |det Q|");
  ratio->add_option("--inner", a.inner)->required();
  ratio->add_option("--outer", a.outer)->required();

  auto* dis = app.add_subcommand("disaggregate", "Split an aggregate profile (CSV out)");
  dis->add_option("--result", a.result)->required();
  dis->add_option("--profile", a.profile, "JSON array")->required();
  dis->add_option("--out", a.out);
  dis->add_option("--tol", a.tol);

  auto* peak = app.add_subcommand("peak-demo", "Peak-minimizing profile and grouped split");
  peak->add_option("--scenario", a.scenario)->required();
  peak->add_option("--method", a.method)
      ->check(CLI::IsMember({"structure", "affine", "decomposed", "homothet"}));
  peak->add_option("--group-size", a.group_size);
  peak->add_option("--out", a.out);
  peak->add_option("--tol", a.tol);

  auto* sweep = app.add_subcommand("sweep", "Heterogeneity sweep (CSV out)");
  sweep->add_option("--n", a.n);
  sweep->add_option("--t", a.T);
  sweep->add_option("--delta", a.delta);
  sweep->add_option("--sigmas", a.sigmas, "Comma-separated list");
  sweep->add_option("--trials", a.trials);
  sweep->add_option("--seed", a.seed)->required();
  sweep->add_option("--epsilon", a.epsilon);
  sweep->add_option("--out", a.out);
  sweep->add_option("--summary", a.summary);

  auto* orc = app.add_subcommand("oracle2d", "Exact Minkowski sum of a 2D scenario");
  orc->add_option("--scenario", a.scenario)->required();
  orc->add_option("--inner", a.inner, "Also report this inner area");
  orc->add_option("--outer", a.outer, "Also report this outer area");
  orc->add_option("--out", a.out, "Vertex CSV");

  auto* val = app.add_subcommand("validate", "Check disaggregations of sampled points");
  val->add_option("--scenario", a.scenario)->required();
  val->add_option("--result", a.result)->required();
  val->add_option("--samples", a.samples);
  val->add_option("--seed", a.seed);
  val->add_option("--tol", a.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (a.method.empty()) a.method = "structure";

  try {
    if (*gen) return run_generate(a);
    if (*inner) return run_inner(a);
    if (*outer) return run_outer(a);
    if (*ratio) return run_ratio(a);
    if (*dis) return run_disaggregate(a);
    if (*peak) return run_peak(a);
    if (*sweep) return run_sweep(a);
    if (*orc) return run_oracle(a);
    if (*val) return run_validate(a);
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
