// Copyright 2026 The CEMS Authors
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

#ifndef CEMS_LP_LINEAR_PROGRAM_HPP_
#define CEMS_LP_LINEAR_PROGRAM_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace cems::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense : std::uint8_t { kLe, kEq, kGe };

struct Term {
  int var = 0;
  double coef = 0.0;

  bool operator==(const Term&) const = default;
};

struct Row {
  std::vector<Term> terms;
  Sense sense = Sense::kLe;
  double rhs = 0.0;
  std::string name;

  bool operator==(const Row&) const = default;
};

struct Bounds {
  double lower = 0.0;
  double upper = kInf;

  bool operator==(const Bounds&) const = default;
};

// Minimize objective . x subject to rows and variable bounds.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<Bounds> var_bounds;
  std::vector<std::string> var_names;
  std::vector<Row> constraints;

  int num_vars() const { return static_cast<int>(var_bounds.size()); }
  int num_rows() const { return static_cast<int>(constraints.size()); }

  int add_var(std::string name, double lower = 0.0, double upper = kInf,
              double cost = 0.0);
  int add_row(std::vector<Term> terms, Sense sense, double rhs,
              std::string name = {});

  // Empty when every row references valid columns, bounds are ordered and
  // equality rows have finite right-hand sides.
  std::vector<std::string> structural_errors() const;

  bool operator==(const LinearProgram&) const = default;
};

struct MilpProblem {
  LinearProgram lp;
  std::vector<int> binary_vars;

  std::vector<std::string> structural_errors() const;
};

struct FeasTolerances {
  double feasibility = 1e-7;
  double optimality = 1e-7;
  // 0 selects the default 50 * (num_vars + num_rows).
  long iteration_limit = 0;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_threshold = 50;
};

double row_activity(const Row& row, std::span<const double> x);

// Largest bound or row violation of x. Rows are measured in their own units.
double max_violation(const LinearProgram& lp, std::span<const double> x);

// Indices of rows violated by more than tol.
std::vector<int> violated_rows(const LinearProgram& lp,
                               std::span<const double> x, double tol);

}  // namespace cems::lp

#endif  // CEMS_LP_LINEAR_PROGRAM_HPP_
