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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "flexsum/disaggregation.hpp"
#include "flexsum/error.hpp"

namespace flexsum {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, int sigma_index, int trial) {
  const double u = keyed_uniform(seed, static_cast<std::uint64_t>(sigma_index),
                                 0x5eedULL, static_cast<std::uint64_t>(trial));
  return static_cast<std::uint64_t>(u * 0x1.0p53);
}

SweepResult heterogeneity_sweep(const SweepConfig& c) {
  if (c.trials < 1) throw DomainError("trials must be at least 1");
  if (c.sigmas.empty()) throw DomainError("need at least one sigma");
  SweepResult out;
  const char* methods[] = {"structure", "affine", "homothet"};
  InnerOptions inner_opt;
  inner_opt.lp = c.lp;
  inner_opt.keep_certificates = false;
  OuterOptions outer_opt;
  outer_opt.lp = c.lp;
  outer_opt.epsilon = c.epsilon;
  outer_opt.keep_certificates = false;

  for (std::size_t si = 0; si < c.sigmas.size(); ++si) {
    for (int trial = 0; trial < c.trials; ++trial) {
      ScenarioConfig sc;
      sc.n = c.n;
      sc.T = c.T;
      sc.delta = c.delta;
      sc.sigma = c.sigmas[si];
      sc.seed = trial_seed(c.seed, static_cast<int>(si), trial);
      sc.homogenize_windows = true;
      const Scenario s = sample_scenario(sc);

      double logdet_outer = 0.0;
      bool outer_ok = true;
      try {
        const auto outer = solve_outer_lp(s.models, s.base, outer_opt);
        logdet_outer = log_abs_det(outer.Q_map).log_abs;
      } catch (const std::exception&) {
        outer_ok = false;
      }
      double alpha_structure = std::numeric_limits<double>::quiet_NaN();
      double alpha_homothet = std::numeric_limits<double>::quiet_NaN();
      double trace_affine = std::numeric_limits<double>::quiet_NaN();
      for (const char* m : methods) {
        SweepRow row;
        row.sigma = c.sigmas[si];
        row.trial = trial;
        row.method = m;
        row.logdet_outer = logdet_outer;
        try {
          const InnerMethod im = row.method == "affine" ? InnerMethod::kDecomposed
                                                        : parse_inner_method(row.method);
          const auto inner = solve_inner(im, s.models, s.base, inner_opt);
          row.alpha_or_trace = inner.objective;
          if (row.method == "structure") alpha_structure = inner.objective;
          if (row.method == "homothet") alpha_homothet = inner.objective;
          if (row.method == "affine") trace_affine = inner.objective;
          const auto ld = log_abs_det(inner.map);
          row.logdet_inner = ld.log_abs;
          if (!outer_ok) {
            row.status = "failed";
            row.ratio = std::numeric_limits<double>::quiet_NaN();
          } else if (ld.sign == 0) {
            row.status = "singular";
            row.ratio = 0.0;
          } else {
            row.status = "ok";
            row.ratio = std::exp(ld.log_abs - logdet_outer);
          }
        } catch (const std::exception&) {
          row.status = "failed";
          row.ratio = std::numeric_limits<double>::quiet_NaN();
        }
        out.rows.push_back(row);
      }
      if (!std::isnan(alpha_homothet) && !std::isnan(alpha_structure)) {
        out.worst_homothet_gap = std::max(out.worst_homothet_gap, alpha_homothet - alpha_structure);
      }
      if (!std::isnan(alpha_structure) && !std::isnan(trace_affine)) {
        out.worst_trace_gap = std::max(out.worst_trace_gap, c.T * alpha_structure - trace_affine);
      }
    }
  }

  for (double sigma : c.sigmas) {
    for (const char* m : methods) {
      SweepSummary s;
      s.sigma = sigma;
      s.method = m;
      std::vector<double> values;
      for (const auto& r : out.rows) {
        if (r.sigma != sigma || r.method != m) continue;
        if (r.status == "failed") {
          ++s.failed;
          continue;
        }
        if (r.status == "singular") ++s.singular;
        values.push_back(r.ratio);
      }
      s.valid = static_cast<int>(values.size());
      if (!values.empty()) {
        s.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stderr_ = values.size() > 1
                        ? std::sqrt(ss / (values.size() - 1)) / std::sqrt(double(values.size()))
                        : 0.0;
      } else {
        s.mean = std::numeric_limits<double>::quiet_NaN();
      }
      out.summary.push_back(s);
    }
  }
  return out;
}

Vector peak_power_profile(const TransformResult& r, const lp::LpOptions& options) {
  const HPolytope& U0 = r.base.polytope;
  const int T = U0.dim();
  if (r.map.rows() != T || r.map.cols() != T || r.center.size() != T) {
    throw DimensionError("transform does not match its base set");
  }
  lp::LinearProgram prog(lp::Sense::kMinimize);
  const auto x = prog.add_block("u0", T);
  const auto t = prog.add_block("t", 1, 1, 0.0);
  prog.add_objective(t(0), 1.0);
  lp::LinearExpr row;
  for (int i = 0; i < U0.num_rows(); ++i) {
    row.clear();
    for (int j = 0; j < T; ++j) {
      if (U0.A()(i, j) != 0.0) row.push_back({x(j), U0.A()(i, j)});
    }
    prog.add_less_equal(row, U0.b()(i));
  }
  // -t <= center + map u0 <= t.
  for (int i = 0; i < T; ++i) {
    row.clear();
    for (int j = 0; j < T; ++j) {
      if (r.map(i, j) != 0.0) row.push_back({x(j), r.map(i, j)});
    }
    row.push_back({t(0), -1.0});
    prog.add_less_equal(row, -r.center(i));
    for (auto& term : row) term.coef = -term.coef;
    row.back().coef = -1.0;
    prog.add_less_equal(row, r.center(i));
  }
  const auto sol = lp::solve_lp(prog, options);
  if (sol.status == lp::Status::kInfeasible) throw DomainError("inner approximation is empty");
  if (!sol.optimal()) throw SolverError("peak power LP: " + sol.message);
  return r.center + r.map * sol.at("u0");
}

std::vector<Vector> group_disaggregation(const TransformResult& result, const Vector& u,
                                         int group_size, std::span<const int> arrivals,
                                         double tol) {
  const std::size_t N = result.per_set.size();
  if (group_size < 1) throw DomainError("group size must be positive");
  if (arrivals.size() != N) throw DimensionError("need one arrival per EV");
  const auto parts = disaggregate(result, u, tol);
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return arrivals[a] < arrivals[b]; });
  std::vector<Vector> groups;
  for (std::size_t k = 0; k < N; k += group_size) {
    Vector sum = Vector::Zero(u.size());
    for (std::size_t j = k; j < std::min(N, k + group_size); ++j) sum += parts[order[j]];
    groups.push_back(std::move(sum));
  }
  return groups;
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
  out << "sigma,trial,method,alpha_or_trace,logdet_inner,logdet_outer,ratio,status\n";
  for (const auto& row : r.rows) {
    out << fmt(row.sigma) << ',' << row.trial << ',' << row.method << ','
        << fmt(row.alpha_or_trace) << ',' << fmt(row.logdet_inner) << ','
        << fmt(row.logdet_outer) << ',' << fmt(row.ratio) << ',' << row.status << '\n';
  }
}

void write_sweep_summary_csv(std::ostream& out, const SweepResult& r) {
  out << "sigma,method,mean_ratio,stderr,valid,singular,failed\n";
  for (const auto& s : r.summary) {
    out << fmt(s.sigma) << ',' << s.method << ',' << fmt(s.mean) << ',' << fmt(s.stderr_) << ','
        << s.valid << ',' << s.singular << ',' << s.failed << '\n';
  }
}

void write_peak_csv(std::ostream& out, const Vector& u, double delta,
                    std::span<const Vector> groups) {
  out << "period,aggregate_u,aggregate_x";
  for (std::size_t g = 0; g < groups.size(); ++g) out << ",group_" << g + 1;
  out << '\n';
  double x = 0.0;
  for (Eigen::Index t = 0; t < u.size(); ++t) {
    x += delta * u(t);
    out << t << ',' << fmt(u(t)) << ',' << fmt(x);
    for (const auto& g : groups) out << ',' << fmt(g(t));
    out << '\n';
  }
}

}  // namespace flexsum
