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

// Splitting an aggregate profile of an inner approximation into individually
// feasible profiles u_i = gamma_i + Gamma_i u0.

#pragma once

#include <vector>

#include "flexsum/inner.hpp"

namespace flexsum {

/// Returns u0 in U0 with center + map u0 = u.  A well-conditioned map
/// (|det| > 0 and condition number <= 1e12) is inverted directly; otherwise
/// an LP picks the u0 closest (max norm) to the Chebyshev center of U0.
/// Throws DomainError("point outside inner approximation") when no such u0
/// exists within tol.
Vector recover_base_point(const TransformResult& result, const Vector& u,
                          double tol = 1e-7);

/// One profile per set; they sum to u.
std::vector<Vector> disaggregate(const TransformResult& result, const Vector& u,
                                 double tol = 1e-7);

/// Condition estimate ||M||_inf ||M^-1||_inf, +inf when singular.
double condition_estimate(const Matrix& M);

}  // namespace flexsum
