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

// EV charging parameters, their battery models, and seeded populations.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "flexsum/polytope.hpp"

namespace flexsum {

struct EvParams {
  int a = 0;  // plug-in period
  int d = 0;  // last period before the deadline
  double u_min = -10.0;
  double u_max = 10.0;
  double x_max = 70.0;
  double x_init = 14.0;
  double x_fin = 40.0;
  int T = 1;
  double delta = 1.0;

  /// Throws DomainError when an invariant fails.
  void validate() const;
};

/// u in [u_min, u_max] on [a .. d], zero elsewhere; net energy x(t) for
/// t = 1..T bounded by (x_max - x_init) 1{t >= a} and
/// x_fin 1{t > d} - x_init 1{t >= a}.  Throws DomainError("infeasible
/// energy requirement") when the window cannot deliver x_fin - x_init.
BatteryModel limits_from_params(const EvParams& p);

struct Scenario {
  std::vector<BatteryModel> models;
  std::vector<EvParams> params;
  BaseSet base;
  std::uint64_t seed = 0;
  double sigma = 0.0;
  int T = 1;
  double delta = 1.0;
  /// Hours after midnight of period 0 (15 = 3PM).
  double clock_origin = 15.0;
  bool homogenized = false;
  int rejections = 0;
};

struct ScenarioConfig {
  int n = 15;
  int T = 12;
  double delta = 1.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  bool homogenize_windows = false;
  double clock_origin = 15.0;
  // Sampling ranges, hours after midnight of the first day.
  double arrival_lo = 15.0;
  double arrival_hi = 20.0;
  double deadline_lo = 29.0;  // 5AM next day
  double deadline_hi = 35.0;  // 11AM next day
  double u_min = -10.0;
  double u_max = 10.0;
  double x_max = 70.0;
  double x_init = 14.0;
  double x_fin_mid = 40.0;
  double x_fin_spread = 30.0;
};

/// Deterministic in the config: each (seed, ev, field, attempt) has its own
/// stream.  Infeasible draws are redrawn and counted.
Scenario sample_scenario(const ScenarioConfig& config);

/// Rebuilds models and base set from params (after loading, say).
void rebuild_scenario(Scenario& s);

enum class Rounding { kUp, kDown };

/// Period index of `label` on a grid starting at `origin` (both in hours on
/// the same absolute axis).  Throws DomainError when label < origin.
int clock_to_index(double label, double origin, double delta, Rounding rounding);

/// "3PM", "11AM", "12AM", "15:00", "7:30PM" -> hours after midnight.
double parse_clock(std::string_view label);
std::string format_clock(double hours);

/// Uniform double in [0, 1) from a counter-based hash.
double keyed_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t field,
                     std::uint64_t attempt);

}  // namespace flexsum
