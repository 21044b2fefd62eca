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

#ifndef CEMS_LP_SIMPLEX_HPP_
#define CEMS_LP_SIMPLEX_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "cems/lp/linear_program.hpp"

namespace cems::lp {

enum class Status : std::uint8_t { kOptimal, kInfeasible, kUnbounded };

const char* to_string(Status s);

enum class VarStatus : std::int8_t { kBasic, kAtLower, kAtUpper, kFree };

// Status of every structural column followed by every row logical. Exactly
// num_rows entries are kBasic in a valid basis.
struct Basis {
  std::vector<VarStatus> status;

  bool empty() const { return status.empty(); }
  bool operator==(const Basis&) const = default;
};

struct Solution {
  Status status = Status::kInfeasible;
  double objective_value = 0.0;
  // Structural values. For an infeasible LP this is the phase-1 end point,
  // which localizes the conflicting rows.
  std::vector<double> primal;
  double mip_gap = 0.0;
  Basis basis;
  long iterations = 0;
  long nodes = 0;
};

// Bounded-variable primal revised simplex on [A | -I] with row logicals.
// The scaled matrix is kept between solves so branch-and-bound can change
// bounds and re-solve from a warm basis.
class SimplexSolver {
 public:
  SimplexSolver(const LinearProgram& lp, const FeasTolerances& tol);
  ~SimplexSolver();
  SimplexSolver(const SimplexSolver&) = delete;
  SimplexSolver& operator=(const SimplexSolver&) = delete;

  // Bounds in the original (unscaled) units.
  void set_var_bounds(int var, double lower, double upper);
  Bounds var_bounds(int var) const;

  Solution solve(const Basis* warm_start = nullptr);

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

// Throws InputError for structural violations and ResourceError when the
// iteration limit is exhausted. Deterministic.
Solution solve_lp(const LinearProgram& lp, const FeasTolerances& tol = {},
                  const Basis* warm_start = nullptr);

}  // namespace cems::lp

#endif  // CEMS_LP_SIMPLEX_HPP_
