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

#include "flexsum/lp.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wunused-parameter"
#include "Highs.h"
#pragma GCC diagnostic pop
#include "flexsum/error.hpp"

namespace flexsum::lp {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
    case Status::kNumericalFailure:
      return "numerical_failure";
  }
  return "numerical_failure";
}

VarBlock LinearProgram::add_block(std::string name, int rows, int cols,
                                  double lower, double upper) {
  if (rows < 0 || cols < 0) {
    throw DimensionError("negative block shape for '" + name + "'");
  }
  for (const auto& b : blocks_) {
    if (b.name == name) throw DomainError("duplicate variable block '" + name + "'");
  }
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw DomainError("invalid bounds for block '" + name + "'");
  }
  VarBlock block{std::move(name), num_variables(), rows, cols};
  const auto n = static_cast<std::size_t>(block.size());
  lower_.insert(lower_.end(), n, lower);
  upper_.insert(upper_.end(), n, upper);
  cost_.insert(cost_.end(), n, 0.0);
  blocks_.push_back(block);
  return block;
}

const VarBlock& LinearProgram::block(std::string_view name) const {
  for (const auto& b : blocks_) {
    if (b.name == name) return b;
  }
  throw DomainError("unknown variable block '" + std::string(name) + "'");
}

void LinearProgram::set_bounds(int var, double lower, double upper) {
  if (var < 0 || var >= num_variables()) throw DimensionError("variable index out of range");
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw DomainError("invalid variable bounds");
  }
  lower_[var] = lower;
  upper_[var] = upper;
}

void LinearProgram::add_objective(int var, double coef) {
  if (var < 0 || var >= num_variables()) throw DimensionError("variable index out of range");
  if (!std::isfinite(coef)) throw DomainError("non-finite objective coefficient");
  cost_[var] += coef;
}

void LinearProgram::append_row(RowStore& store, std::span<const Term> terms,
                               double rhs, double sign) {
  if (!std::isfinite(rhs)) throw DomainError("non-finite constraint rhs");
  scratch_.assign(terms.begin(), terms.end());
  const int n = num_variables();
  for (const auto& t : scratch_) {
    if (t.var < 0 || t.var >= n) {
      throw DimensionError("constraint references an undeclared variable");
    }
    if (!std::isfinite(t.coef)) throw DomainError("non-finite constraint coefficient");
  }
  std::sort(scratch_.begin(), scratch_.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  std::size_t i = 0;
  while (i < scratch_.size()) {
    const int var = scratch_[i].var;
    double coef = 0.0;
    for (; i < scratch_.size() && scratch_[i].var == var; ++i) coef += scratch_[i].coef;
    if (coef != 0.0) {
      store.index.push_back(var);
      store.value.push_back(sign * coef);
    }
  }
  store.start.push_back(static_cast<int>(store.index.size()));
  store.rhs.push_back(sign * rhs);
}

void LinearProgram::add_less_equal(std::span<const Term> terms, double rhs) {
  append_row(ineq_, terms, rhs, 1.0);
}

void LinearProgram::add_greater_equal(std::span<const Term> terms, double rhs) {
  append_row(ineq_, terms, rhs, -1.0);
}

void LinearProgram::add_equal(std::span<const Term> terms, double rhs) {
  append_row(eq_, terms, rhs, 1.0);
}

double LinearProgram::max_violation(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != num_variables()) {
    throw DimensionError("point has wrong dimension for this program");
  }
  double worst = 0.0;
  auto row_activity = [&](const RowStore& s, int r) {
    double a = 0.0;
    for (int k = s.start[r]; k < s.start[r + 1]; ++k) a += s.value[k] * x[s.index[k]];
    return a;
  };
  for (int r = 0; r < ineq_.size(); ++r) {
    const double v = row_activity(ineq_, r) - ineq_.rhs[r];
    worst = std::max(worst, v / (1.0 + std::abs(ineq_.rhs[r])));
  }
  for (int r = 0; r < eq_.size(); ++r) {
    const double v = std::abs(row_activity(eq_, r) - eq_.rhs[r]);
    worst = std::max(worst, v / (1.0 + std::abs(eq_.rhs[r])));
  }
  for (int j = 0; j < num_variables(); ++j) {
    if (std::isfinite(lower_[j])) {
      worst = std::max(worst, (lower_[j] - x[j]) / (1.0 + std::abs(lower_[j])));
    }
    if (std::isfinite(upper_[j])) {
      worst = std::max(worst, (x[j] - upper_[j]) / (1.0 + std::abs(upper_[j])));
    }
  }
  return worst;
}

double default_tolerance() {
  if (const char* env = std::getenv("FLEXSUM_LP_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && std::isfinite(v) && v > 0.0) return v;
  }
  return 1e-8;
}

LpOptions default_options() {
  LpOptions options;
  options.tol = default_tolerance();
  return options;
}

const Eigen::MatrixXd& LpSolution::at(std::string_view block) const {
  const auto it = values.find(block);
  if (it == values.end()) {
    throw DomainError("no values for block '" + std::string(block) + "' (status " +
                      std::string(to_string(status)) + ")");
  }
  return it->second;
}

namespace {

// Allowed max dual infeasibility of an accepted non-vertex IPM point, in units
// of the tolerance.  Reduced costs scale with the multipliers, which run to
// O(1e2) on the containment programs.
constexpr double kDualSlack = 1e3;

HighsLp to_highs(const LinearProgram& lp) {
  HighsLp h;
  const auto& ineq = lp.inequalities();
  const auto& eq = lp.equalities();
  h.num_col_ = lp.num_variables();
  h.num_row_ = ineq.size() + eq.size();
  h.sense_ = lp.sense() == Sense::kMaximize ? ObjSense::kMaximize : ObjSense::kMinimize;
  h.offset_ = 0.0;
  h.col_cost_ = lp.objective();
  h.col_lower_.resize(h.num_col_);
  h.col_upper_.resize(h.num_col_);
  for (int j = 0; j < h.num_col_; ++j) {
    h.col_lower_[j] = std::isfinite(lp.lower()[j]) ? lp.lower()[j] : -kHighsInf;
    h.col_upper_[j] = std::isfinite(lp.upper()[j]) ? lp.upper()[j] : kHighsInf;
  }
  h.row_lower_.reserve(h.num_row_);
  h.row_upper_.reserve(h.num_row_);
  for (double r : ineq.rhs) {
    h.row_lower_.push_back(-kHighsInf);
    h.row_upper_.push_back(r);
  }
  for (double r : eq.rhs) {
    h.row_lower_.push_back(r);
    h.row_upper_.push_back(r);
  }
  auto& a = h.a_matrix_;
  a.format_ = MatrixFormat::kRowwise;
  a.num_col_ = h.num_col_;
  a.num_row_ = h.num_row_;
  a.start_.assign(ineq.start.begin(), ineq.start.end());
  a.index_.assign(ineq.index.begin(), ineq.index.end());
  a.value_.assign(ineq.value.begin(), ineq.value.end());
  const int base = static_cast<int>(ineq.index.size());
  for (std::size_t r = 1; r < eq.start.size(); ++r) a.start_.push_back(base + eq.start[r]);
  a.index_.insert(a.index_.end(), eq.index.begin(), eq.index.end());
  a.value_.insert(a.value_.end(), eq.value.begin(), eq.value.end());
  return h;
}

struct Attempt {
  HighsModelStatus model_status = HighsModelStatus::kNotset;
  std::vector<double> x;
  double objective = 0.0;
  bool has_primal = false;
  // Relative primal-dual gap and dual infeasibility; inf when no duals.
  double gap = kInf;
  double dual_infeasibility = kInf;
};

Attempt run_highs(const HighsLp& model, const LpOptions& options, bool interior_point,
                  bool crossover, bool presolve) {
  Highs highs;
  highs.setOptionValue("output_flag", false);
  highs.setOptionValue("threads", 1);
  highs.setOptionValue("random_seed", 0);
  highs.setOptionValue("primal_feasibility_tolerance", options.tol);
  highs.setOptionValue("dual_feasibility_tolerance", options.tol);
  highs.setOptionValue("ipm_optimality_tolerance", options.tol);
  if (interior_point && !crossover) {
    // No vertex to polish, so ask IPX for a tighter point up front.
    highs.setOptionValue("ipm_optimality_tolerance", 0.1 * options.tol);
    highs.setOptionValue("primal_feasibility_tolerance", 0.1 * options.tol);
    highs.setOptionValue("dual_feasibility_tolerance", 0.1 * options.tol);
  }
  highs.setOptionValue("presolve", presolve ? "on" : "off");
  if (std::isfinite(options.time_limit_seconds)) {
    highs.setOptionValue("time_limit", options.time_limit_seconds);
  }
  if (interior_point) {
    highs.setOptionValue("solver", "ipm");
    highs.setOptionValue("run_crossover", crossover ? "on" : "off");
  } else {
    highs.setOptionValue("solver", "simplex");
  }
  Attempt out;
  if (highs.passModel(model) == HighsStatus::kError) {
    out.model_status = HighsModelStatus::kModelError;
    return out;
  }
  highs.run();
  out.model_status = highs.getModelStatus();
  const auto& sol = highs.getSolution();
  if (sol.value_valid) {
    out.x = sol.col_value;
    out.has_primal = true;
    out.objective = highs.getInfo().objective_function_value;
  }
  double dual_objective = 0.0;
  if (out.has_primal && sol.dual_valid &&
      highs.getDualObjectiveValue(dual_objective) == HighsStatus::kOk) {
    out.gap = std::abs(out.objective - dual_objective) / (1.0 + std::abs(out.objective));
    out.dual_infeasibility = highs.getInfo().max_dual_infeasibility;
  }
  return out;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options) {
  if (!(options.tol > 0.0)) throw DomainError("LP tolerance must be positive");
  const HighsLp model = to_highs(lp);

  bool interior_point = false;
  switch (options.algorithm) {
    case Algorithm::kSimplex:
      break;
    case Algorithm::kInteriorPoint:
      interior_point = true;
      break;
    case Algorithm::kAuto:
      interior_point = lp.num_variables() >= options.interior_point_threshold;
      break;
  }

  // Interior point without crossover is much faster on the large containment
  // programs; its answer is accepted only when it passes the row check,
  // otherwise the solve is repeated with crossover (and then simplex).
  struct Step {
    bool ipm;
    bool crossover;
    bool presolve;
  };
  std::vector<Step> plan;
  if (interior_point) {
    plan = {{true, false, false}, {true, true, true}, {false, false, true}};
  } else {
    plan = {{false, false, true}, {true, true, false}};
  }

  static const bool trace = std::getenv("FLEXSUM_LP_TRACE") != nullptr;
  LpSolution result;
  for (std::size_t attempt = 0; attempt < plan.size(); ++attempt) {
    const Step step = plan[attempt];
    const auto t0 = std::chrono::steady_clock::now();
    Attempt a = run_highs(model, options, step.ipm, step.crossover, step.presolve);
    if (trace) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::fprintf(stderr, "lp: %d vars %d rows attempt %zu ipm=%d status=%d viol=%.3g gap=%.3g dinf=%.3g %.3fs\n",
                   lp.num_variables(), model.num_row_, attempt, step.ipm ? 1 : 0,
                   static_cast<int>(a.model_status),
                   a.has_primal ? lp.max_violation(a.x) : -1.0, a.gap, a.dual_infeasibility,
                   secs);
    }
    if (a.model_status == HighsModelStatus::kUnboundedOrInfeasible) {
      // Presolve could not tell which; ask simplex without presolve.
      a = run_highs(model, options, false, false, false);
    }
    switch (a.model_status) {
      case HighsModelStatus::kModelEmpty:
        // No variables at all: the empty vector is the unique point.
        a.x.clear();
        a.has_primal = true;
        [[fallthrough]];
      case HighsModelStatus::kUnknown:
        // IPX stops short of its own optimality test now and then although
        // the point is fine.  Take it only with a small gap and dual residual.
        if (a.model_status == HighsModelStatus::kUnknown &&
            !(step.ipm && !step.crossover && a.gap <= options.tol &&
              a.dual_infeasibility <= kDualSlack * options.tol)) {
          break;
        }
        [[fallthrough]];
      case HighsModelStatus::kOptimal: {
        if (!a.has_primal) break;
        const double violation = lp.max_violation(a.x);
        result.max_violation = violation;
        if (violation > options.tol && attempt + 1 < plan.size()) {
          result.message = "row check failed after attempt " + std::to_string(attempt);
          continue;
        }
        if (violation > 10.0 * options.tol) {
          result.status = Status::kNumericalFailure;
          result.message = "solution violates constraints by " + std::to_string(violation);
          return result;
        }
        result.status = Status::kOptimal;
        result.objective_value = a.objective;
        result.x = std::move(a.x);
        for (const auto& b : lp.blocks()) {
          Eigen::MatrixXd m(b.rows, b.cols);
          for (int r = 0; r < b.rows; ++r) {
            for (int c = 0; c < b.cols; ++c) m(r, c) = result.x[b(r, c)];
          }
          result.values.emplace(b.name, std::move(m));
        }
        return result;
      }
      case HighsModelStatus::kInfeasible:
        result.status = Status::kInfeasible;
        return result;
      case HighsModelStatus::kUnbounded:
        result.status = Status::kUnbounded;
        return result;
      default:
        break;
    }
    result.message = "solver status " + std::to_string(static_cast<int>(a.model_status));
  }
  result.status = Status::kNumericalFailure;
  return result;
}

}  // namespace flexsum::lp
