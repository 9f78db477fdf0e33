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

// Desk-scale experiments: heterogeneity sweep, peak-power profile and
// grouped disaggregation.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "flexsum/ev_model.hpp"
#include "flexsum/inner.hpp"
#include "flexsum/outer.hpp"

namespace flexsum {

struct SweepConfig {
  int n = 15;
  int T = 12;
  double delta = 1.0;
  std::vector<double> sigmas = {0.0, 0.25, 0.5, 0.75, 1.0};
  int trials = 20;
  std::uint64_t seed = 0;
  lp::LpOptions lp = lp::default_options();
  double epsilon = 1e-6;
};

struct SweepRow {
  double sigma = 0.0;
  int trial = 0;
  std::string method;  // structure | affine | homothet
  double alpha_or_trace = 0.0;
  double logdet_inner = 0.0;
  double logdet_outer = 0.0;
  double ratio = 0.0;
  std::string status;  // ok | singular | failed
};

struct SweepSummary {
  double sigma = 0.0;
  std::string method;
  double mean = 0.0;
  double stderr_ = 0.0;
  int valid = 0;     // trials that produced a ratio (singular counts, as 0)
  int singular = 0;
  int failed = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepSummary> summary;
  /// Worst violation of the per-trial orderings (positive means violated):
  /// alpha(homothet) - alpha(structure) and T alpha(structure) - trace(affine).
  double worst_homothet_gap = -std::numeric_limits<double>::infinity();
  double worst_trace_gap = -std::numeric_limits<double>::infinity();
};

/// Seed of trial `trial` at sigma index `sigma_index`.
std::uint64_t trial_seed(std::uint64_t seed, int sigma_index, int trial);

/// Windows are homogenized; the affine method is computed by decomposition
/// and ratios are taken against solve_outer_lp.
SweepResult heterogeneity_sweep(const SweepConfig& config);

/// argmin ||u||_inf over center + map U0.
Vector peak_power_profile(const TransformResult& result,
                          const lp::LpOptions& options = lp::default_options());

/// Sums disaggregated profiles over groups of `group_size` consecutive EVs
/// in order of arrival (ties by index).  The last group may be smaller.
std::vector<Vector> group_disaggregation(const TransformResult& result, const Vector& u,
                                         int group_size, std::span<const int> arrivals,
                                         double tol = 1e-7);

void write_sweep_csv(std::ostream& out, const SweepResult& r);
void write_sweep_summary_csv(std::ostream& out, const SweepResult& r);
/// period, aggregate_u, aggregate_x, group_1..group_k.
void write_peak_csv(std::ostream& out, const Vector& u, double delta,
                    std::span<const Vector> groups);

}  // namespace flexsum
