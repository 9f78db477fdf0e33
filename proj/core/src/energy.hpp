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

// Internal helpers shared by the inner and outer LP builders.
//
// The LPs are written in net-energy coordinates y = L u.  With D = L^-1 the
// battery sets become {y : (I; -I; D; -D) y <= h}, whose constraint matrix
// has at most two nonzeros per row.  An affine map (g, G) in u-coordinates
// corresponds to (L g, L G D) in y-coordinates and Lambda is unchanged.

#pragma once

#include <span>
#include <vector>

#include "flexsum/lp.hpp"
#include "flexsum/polytope.hpp"

namespace flexsum::detail {

/// (I; -I; D; -D), 4T x T.
Matrix energy_matrix(int T, double delta);

/// Checks that every model shares T and delta with `base` and returns the
/// right-hand sides.  Throws DimensionError otherwise.
std::vector<Vector> collect_rhs(std::span<const BatteryModel> models, const BaseSet& base);

/// Coordinates in which the base set has zero power width.
std::vector<int> flat_coordinates(const BaseSet& base);

/// `set` without its redundant rows.  Row j of the original description is
/// combination.row(j) times the kept rows, with right-hand side no smaller
/// than the same combination of the kept right-hand sides (kept rows map to
/// unit rows).  Containment certificates written against the reduced sets
/// expand through expand_certificate.
struct ReducedSet {
  HPolytope set;
  std::vector<int> kept;
  Matrix combination;  // original rows x kept rows, >= 0
};

/// Rows are dropped one at a time, each only when an LP shows it is implied
/// by the rows still present.  Empty or numerically awkward sets come back
/// unreduced.
ReducedSet drop_redundant_rows(const HPolytope& set, const lp::LpOptions& options);

/// drop_redundant_rows of {y : energy_matrix(T, delta) y <= h}, memoized per
/// thread.  Redundancy does not change under h -> c h - H' v (c > 0), so one
/// reduction serves shifted and scaled copies through with_rhs.
const ReducedSet& reduced_battery(int T, double delta, const Vector& h,
                                  const lp::LpOptions& options);

/// Same kept rows and combination, right-hand side taken from `full_rhs`.
ReducedSet with_rhs(const ReducedSet& reduced, const Vector& full_rhs);

/// Lambda for (X, Y) from a certificate for (X reduced, Y reduced).
Matrix expand_certificate(const ReducedSet& x, const ReducedSet& y, const Matrix& lambda);

}  // namespace flexsum::detail
