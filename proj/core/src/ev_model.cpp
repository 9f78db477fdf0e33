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

#include "flexsum/ev_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>

#include "flexsum/error.hpp"

namespace flexsum {

void EvParams::validate() const {
  if (T < 1) throw DomainError("T must be at least 1");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("delta must be positive");
  if (a < 0 || a > d || d > T - 1) {
    throw DomainError("need 0 <= a <= d <= T-1 (a=" + std::to_string(a) +
                      ", d=" + std::to_string(d) + ")");
  }
  if (!(u_min < u_max)) throw DomainError("need u_min < u_max");
  if (!(x_init >= 0.0 && x_init <= x_max)) throw DomainError("need 0 <= x_init <= x_max");
  if (!(x_fin >= 0.0 && x_fin <= x_max)) throw DomainError("need 0 <= x_fin <= x_max");
}

BatteryModel limits_from_params(const EvParams& p) {
  p.validate();
  const double window = (p.d - p.a + 1) * p.delta;
  if (p.x_fin - p.x_init > window * p.u_max + 1e-12 * (1.0 + std::abs(p.x_fin))) {
    throw DomainError("infeasible energy requirement");
  }
  BatteryModel m;
  m.delta = p.delta;
  m.u_lo = Vector::Zero(p.T);
  m.u_hi = Vector::Zero(p.T);
  m.x_lo = Vector::Zero(p.T);
  m.x_hi = Vector::Zero(p.T);
  for (int t = 0; t < p.T; ++t) {
    if (t >= p.a && t <= p.d) {
      m.u_lo(t) = p.u_min;
      m.u_hi(t) = p.u_max;
    }
    const int te = t + 1;  // x(te) is the energy after period t
    const double plugged = te >= p.a ? 1.0 : 0.0;
    m.x_hi(t) = (p.x_max - p.x_init) * plugged;
    m.x_lo(t) = (te > p.d ? p.x_fin : 0.0) - p.x_init * plugged;
  }
  return m;
}

// splitmix64 finalizer.
static std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double keyed_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t field,
                     std::uint64_t attempt) {
  std::uint64_t h = mix(seed);
  h = mix(h ^ index);
  h = mix(h ^ (field << 32) ^ attempt);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

int clock_to_index(double label, double origin, double delta, Rounding rounding) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (label < origin) throw DomainError("clock label before grid origin");
  const double k = (label - origin) / delta;
  // Snap values that are a grid point up to rounding noise.
  const double nearest = std::round(k);
  if (std::abs(k - nearest) <= 1e-9 * (1.0 + std::abs(k))) return static_cast<int>(nearest);
  return static_cast<int>(rounding == Rounding::kUp ? std::ceil(k) : std::floor(k));
}

double parse_clock(std::string_view label) {
  std::string s;
  for (char c : label) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  int suffix = 0;  // 0 none, 1 AM, 2 PM
  if (s.size() > 2 && (s.ends_with("AM") || s.ends_with("PM"))) {
    suffix = s.ends_with("AM") ? 1 : 2;
    s.resize(s.size() - 2);
  }
  int hour = 0;
  int minute = 0;
  char extra = 0;
  const int n = std::sscanf(s.c_str(), "%d:%d%c", &hour, &minute, &extra);
  if (n == 1) {
    minute = 0;
    if (s.find(':') != std::string::npos) throw DomainError("bad clock label '" + std::string(label) + "'");
  } else if (n != 2) {
    throw DomainError("bad clock label '" + std::string(label) + "'");
  }
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != ':') {
      throw DomainError("bad clock label '" + std::string(label) + "'");
    }
  }
  if (minute < 0 || minute > 59) throw DomainError("bad minutes in '" + std::string(label) + "'");
  if (suffix != 0) {
    if (hour < 1 || hour > 12) throw DomainError("bad hour in '" + std::string(label) + "'");
    hour %= 12;
    if (suffix == 2) hour += 12;
  } else if (hour < 0 || hour > 23) {
    throw DomainError("bad hour in '" + std::string(label) + "'");
  }
  return hour + minute / 60.0;
}

std::string format_clock(double hours) {
  const double day = std::fmod(std::fmod(hours, 24.0) + 24.0, 24.0);
  int total = static_cast<int>(std::lround(day * 60.0)) % (24 * 60);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d", total / 60, total % 60);
  return buf;
}

void rebuild_scenario(Scenario& s) {
  s.models.clear();
  for (const auto& p : s.params) {
    if (p.T != s.T || p.delta != s.delta) throw DimensionError("params disagree with scenario T/delta");
    s.models.push_back(limits_from_params(p));
  }
  s.base = build_base_set(s.models);
}

namespace {
enum Field : std::uint64_t { kArrival = 1, kDeadline = 2, kFinal = 3 };
constexpr int kMaxAttempts = 1000;
}  // namespace

Scenario sample_scenario(const ScenarioConfig& c) {
  if (c.n < 1) throw DomainError("n must be at least 1");
  if (c.T < 1) throw DomainError("T must be at least 1");
  if (!(c.delta > 0.0)) throw DomainError("delta must be positive");
  if (!(c.sigma >= 0.0 && c.sigma <= 1.0)) throw DomainError("sigma must lie in [0, 1]");

  Scenario s;
  s.seed = c.seed;
  s.sigma = c.sigma;
  s.T = c.T;
  s.delta = c.delta;
  s.clock_origin = c.clock_origin;
  s.homogenized = c.homogenize_windows;
  for (int i = 0; i < c.n; ++i) {
    const auto ev = static_cast<std::uint64_t>(i);
    for (int attempt = 0;; ++attempt) {
      if (attempt >= kMaxAttempts) throw DomainError("could not draw a feasible EV");
      const auto at = static_cast<std::uint64_t>(attempt);
      EvParams p;
      p.T = c.T;
      p.delta = c.delta;
      p.u_min = c.u_min;
      p.u_max = c.u_max;
      p.x_max = c.x_max;
      p.x_init = c.x_init;
      const double w = 2.0 * keyed_uniform(c.seed, ev, kFinal, at) - 1.0;
      p.x_fin = c.x_fin_mid + c.x_fin_spread * c.sigma * w;
      if (c.homogenize_windows) {
        p.a = 0;
        p.d = c.T - 1;
      } else {
        const double arr = c.arrival_lo + (c.arrival_hi - c.arrival_lo) *
                                              keyed_uniform(c.seed, ev, kArrival, at);
        const double dl = c.deadline_lo + (c.deadline_hi - c.deadline_lo) *
                                              keyed_uniform(c.seed, ev, kDeadline, at);
        p.a = std::min(clock_to_index(arr, c.clock_origin, c.delta, Rounding::kUp), c.T - 1);
        p.d = std::min(clock_to_index(dl, c.clock_origin, c.delta, Rounding::kDown), c.T - 1);
      }
      const bool ok = p.a <= p.d &&
                      p.x_fin - p.x_init <= (p.d - p.a + 1) * p.delta * p.u_max &&
                      p.x_fin >= 0.0 && p.x_fin <= p.x_max;
      if (!ok) {
        ++s.rejections;
        continue;
      }
      s.params.push_back(p);
      break;
    }
  }
  rebuild_scenario(s);
  return s;
}

}  // namespace flexsum
