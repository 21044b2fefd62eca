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

#ifndef CEMS_LP_BRANCH_AND_BOUND_HPP_
#define CEMS_LP_BRANCH_AND_BOUND_HPP_

#include "cems/lp/linear_program.hpp"
#include "cems/lp/simplex.hpp"

namespace cems::lp {

struct MilpOptions {
  long node_limit = 100000;
  double integrality_tol = 1e-6;
};

// Best-first branch-and-bound over the binary columns. Branches on the most
// fractional binary; child relaxations are warm-started from the parent
// basis. The returned incumbent is within `gap` (absolute) of the optimum.
// Throws ResourceError with incumbent and bound when the node limit is hit.
Solution solve_milp(const MilpProblem& p, const FeasTolerances& tol = {},
                    double gap = 1e-6, const MilpOptions& options = {});

}  // namespace cems::lp

#endif  // CEMS_LP_BRANCH_AND_BOUND_HPP_
