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

// Inner approximations center + map * U0 of a sum of battery sets.
//
// Each method picks per-set transforms (gamma_i, Gamma_i) with
// gamma_i + Gamma_i U0 inside U_i and reports (sum gamma_i, sum Gamma_i).

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "flexsum/containment.hpp"
#include "flexsum/lp.hpp"
#include "flexsum/polytope.hpp"

namespace flexsum {

enum class InnerMethod { kStructure, kAffine, kDecomposed, kHomothet };

std::string_view to_string(InnerMethod method);
/// Throws DomainError for an unknown name.
InnerMethod parse_inner_method(std::string_view name);

struct PerSetTransform {
  Vector gamma;
  Matrix Gamma;
  std::optional<ContainmentCertificate> certificate;
  /// alpha_i for the homothet method, unused (NaN) otherwise.
  double scale = 0.0;
};

struct TransformResult {
  Vector center;  // sum of gamma_i
  Matrix map;     // sum of Gamma_i
  std::vector<PerSetTransform> per_set;
  /// alpha (structure, homothet) or sum of traces (affine, decomposed).
  double objective = 0.0;
  InnerMethod method = InnerMethod::kStructure;
  BaseSet base;
  /// Worst certificate residual, rechecked in u-coordinates.
  double max_certificate_violation = 0.0;

  AHPolytope as_ahpolytope() const { return {center, map, base.polytope}; }
};

struct InnerOptions {
  lp::LpOptions lp = lp::default_options();
  /// Lower bound on alpha in the structure-preserving LP.
  double epsilon_alpha = 1e-9;
  bool keep_certificates = true;
};

/// max alpha  s.t.  sum Gamma_i = alpha I, gamma_i + Gamma_i U0 in U_i.
TransformResult solve_structure_preserving(std::span<const BatteryModel> models,
                                           const BaseSet& base,
                                           const InnerOptions& options = {});

/// max trace(sum Gamma_i) as a single LP.
TransformResult solve_general_affine(std::span<const BatteryModel> models, const BaseSet& base,
                                     const InnerOptions& options = {});

/// Same optimum as solve_general_affine, one small LP per set.
TransformResult solve_decomposed(std::span<const BatteryModel> models, const BaseSet& base,
                                 const InnerOptions& options = {});

/// Per-set max alpha_i  s.t.  gamma_i + alpha_i U0 in U_i, alpha_i >= 0.
TransformResult solve_homothet_baseline(std::span<const BatteryModel> models,
                                        const BaseSet& base,
                                        const InnerOptions& options = {});

TransformResult solve_inner(InnerMethod method, std::span<const BatteryModel> models,
                            const BaseSet& base, const InnerOptions& options = {});

}  // namespace flexsum
