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

// JSON and CSV formats for scenarios, transforms and profiles.
//
// Matrices are row-major nested arrays.  Every parse error is reported as a
// DomainError naming the offending line or field.

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flexsum/ev_model.hpp"
#include "flexsum/inner.hpp"
#include "flexsum/outer.hpp"

namespace flexsum::io {

std::string scenario_to_json(const Scenario& s);
/// Rebuilds models and base from "params" when present, else from "models".
Scenario scenario_from_json(std::string_view text);

std::string hpolytope_to_json(const HPolytope& p);
HPolytope hpolytope_from_json(std::string_view text);

std::string battery_to_json(const BatteryModel& m);
BatteryModel battery_from_json(std::string_view text);

std::string transform_to_json(const TransformResult& r, bool with_certificates = false);
TransformResult transform_from_json(std::string_view text);

std::string outer_to_json(const OuterResult& r, bool with_certificates = false);
OuterResult outer_from_json(std::string_view text);

/// A flat JSON array of numbers.
Vector vector_from_json(std::string_view text);
std::string vector_to_json(const Vector& v);

/// One row per profile, one column per period, 17 significant digits.
void write_profiles_csv(std::ostream& out, std::span<const Vector> profiles);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace flexsum::io
