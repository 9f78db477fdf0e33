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

// Solver-neutral linear programs.
//
// Every optimization in the library is written against LinearProgram and
// solved through solve_lp().  Variables are declared in named blocks (a
// vector or a row-major matrix of scalars); constraints are sparse rows of
// the form `expr <= rhs` or `expr == rhs`.  Strict inequalities and absolute
// values never appear here: callers convert them before building rows.

#pragma once

#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace flexsum::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { kMaximize, kMinimize };

enum class Status { kOptimal, kInfeasible, kUnbounded, kNumericalFailure };

enum class Algorithm {
  kAuto,           // simplex for small models, interior point for large ones
  kSimplex,
  kInteriorPoint,  // interior point followed by crossover when needed
};

std::string_view to_string(Status status);

struct Term {
  int var;
  double coef;
};

using LinearExpr = std::vector<Term>;

/// A contiguous run of variables viewed as a rows x cols matrix.
struct VarBlock {
  std::string name;
  int offset = 0;
  int rows = 0;
  int cols = 0;

  int size() const { return rows * cols; }
  int operator()(int r, int c = 0) const { return offset + r * cols + c; }
};

class LinearProgram {
 public:
  explicit LinearProgram(Sense sense = Sense::kMaximize) : sense_(sense) {}

  Sense sense() const { return sense_; }

  /// Declares a new block; names must be unique.
  VarBlock add_block(std::string name, int rows, int cols = 1,
                     double lower = -kInf, double upper = kInf);
  const VarBlock& block(std::string_view name) const;
  const std::vector<VarBlock>& blocks() const { return blocks_; }

  void set_bounds(int var, double lower, double upper);
  void add_objective(int var, double coef);

  /// Adds `sum(terms) <= rhs`.  Duplicate variables are merged.
  void add_less_equal(std::span<const Term> terms, double rhs);
  /// Adds `sum(terms) >= rhs` (stored negated).
  void add_greater_equal(std::span<const Term> terms, double rhs);
  void add_equal(std::span<const Term> terms, double rhs);

  int num_variables() const { return static_cast<int>(lower_.size()); }
  int num_inequalities() const { return ineq_.size(); }
  int num_equalities() const { return eq_.size(); }
  std::size_t num_nonzeros() const {
    return ineq_.index.size() + eq_.index.size();
  }

  /// Largest violation of any row or bound at `x`, each measured relative to
  /// (1 + |rhs|) of the row (or bound) it belongs to.
  double max_violation(std::span<const double> x) const;

  // Raw access used by the solver adapter.
  struct RowStore {
    std::vector<int> start{0};
    std::vector<int> index;
    std::vector<double> value;
    std::vector<double> rhs;
    int size() const { return static_cast<int>(rhs.size()); }
  };
  const RowStore& inequalities() const { return ineq_; }
  const RowStore& equalities() const { return eq_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<double>& objective() const { return cost_; }

 private:
  void append_row(RowStore& store, std::span<const Term> terms, double rhs,
                  double sign);

  Sense sense_;
  std::vector<VarBlock> blocks_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> cost_;
  RowStore ineq_;
  RowStore eq_;
  std::vector<Term> scratch_;
};

struct LpOptions {
  /// Feasibility/optimality tolerance handed to the solver and used for the
  /// post-solve row check.
  double tol = 1e-8;
  Algorithm algorithm = Algorithm::kAuto;
  /// kAuto switches to interior point at this many variables.
  int interior_point_threshold = 8000;
  double time_limit_seconds = kInf;
};

/// 1e-8, or the value of FLEXSUM_LP_TOL when set to a positive number.
double default_tolerance();
LpOptions default_options();

struct LpSolution {
  Status status = Status::kNumericalFailure;
  double objective_value = 0.0;
  /// Flat primal vector; empty unless status == kOptimal.
  std::vector<double> x;
  /// Block name -> values (rows x cols); empty unless status == kOptimal.
  std::map<std::string, Eigen::MatrixXd, std::less<>> values;
  double max_violation = 0.0;
  std::string message;

  bool optimal() const { return status == Status::kOptimal; }
  const Eigen::MatrixXd& at(std::string_view block) const;
  double value(int var) const { return x.at(static_cast<std::size_t>(var)); }
};

/// Solves `lp`.  Never throws on solver outcomes; they are reported through
/// LpSolution::status.  Throws DomainError on a malformed program.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options = default_options());

}  // namespace flexsum::lp
