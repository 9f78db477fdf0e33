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

// Outer approximations center + Q_map * U0 of a sum of battery sets.
//
// dilate: Q_map = N I.
// lp:     find Z with gamma_i + Z U_i inside U0 / N, sum gamma_i = 0 and Z
//         strictly diagonally dominant; then the sum lies in Z^-1 U0.
//
// With 0 outside U0 the lp conditions are infeasible as soon as the sets
// differ in width (scaling about 0 also moves the set), so by default they
// are posed in a frame whose origin is the Chebyshev center c0 of U0: all
// sets are shifted by -c0 (the sum by -N c0) and the result is
// center = (N I - Q) c0.

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "flexsum/containment.hpp"
#include "flexsum/lp.hpp"
#include "flexsum/polytope.hpp"

namespace flexsum {

enum class OuterMethod { kDilate, kLp };

std::string_view to_string(OuterMethod method);
OuterMethod parse_outer_method(std::string_view name);

struct OuterPerSet {
  Vector gamma;
  std::optional<ContainmentCertificate> certificate;
};

struct OuterResult {
  Matrix Z;
  Matrix Q_map;
  Vector center;
  /// Origin of the frame the lp conditions were posed in (gamma_i live
  /// there); zero for dilate or when recentering is off.
  Vector frame_origin;
  std::vector<OuterPerSet> per_set;  // empty for dilate
  double epsilon = 0.0;
  OuterMethod method = OuterMethod::kDilate;
  BaseSet base;
  /// LP objective trace(Z); trace(I / N) for dilate.
  double objective = 0.0;
  double max_certificate_violation = 0.0;

  AHPolytope as_ahpolytope() const { return {center, Q_map, base.polytope}; }
  /// H Z (p - center) <= h0 + tol (1 + |h0|).
  bool contains(const Vector& p, double tol) const;
};

struct OuterOptions {
  lp::LpOptions lp = lp::default_options();
  double epsilon = 1e-6;
  /// On infeasibility epsilon is halved up to this many times.
  int max_retries = 5;
  /// Pose the conditions around the Chebyshev center of U0 (see above).
  /// false gives center 0 literally.
  bool recenter = true;
  bool keep_certificates = true;
};

OuterResult dilate_outer(std::span<const BatteryModel> models, const BaseSet& base);

/// Throws DomainError when no margin down to epsilon / 2^max_retries works.
OuterResult solve_outer_lp(std::span<const BatteryModel> models, const BaseSet& base,
                           const OuterOptions& options = {});

/// Z^-1 for a strictly diagonally dominant Z with positive diagonal.  Throws
/// DomainError otherwise.
Matrix invert_map(const Matrix& Z);

/// min_i (Z_ii - sum_{j != i} |Z_ij|).
double dominance_margin(const Matrix& Z);

}  // namespace flexsum
