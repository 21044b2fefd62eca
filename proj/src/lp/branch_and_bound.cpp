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

#include "cems/lp/branch_and_bound.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>
#include <sstream>

#include "cems/error.hpp"

namespace cems::lp {
namespace {

struct Node {
  double bound;
  long id;
  // Fixings for each entry of binary_vars: -1 free, else 0/1.
  std::vector<std::int8_t> fix;
  std::shared_ptr<const Basis> warm;
};

struct WorseNode {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

}  // namespace

Solution solve_milp(const MilpProblem& p, const FeasTolerances& tol, double gap,
                    const MilpOptions& options) {
  if (auto errs = p.structural_errors(); !errs.empty()) {
    throw InputError("MilpProblem: " + errs.front());
  }
  if (!(gap >= 0.0)) throw InputError("solve_milp: gap must be >= 0");

  SimplexSolver solver(p.lp, tol);
  const std::size_t nb = p.binary_vars.size();
  std::vector<Bounds> base(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    base[k] = p.lp.var_bounds[p.binary_vars[k]];
  }

  std::priority_queue<Node, std::vector<Node>, WorseNode> open;
  open.push({-kInf, 0, std::vector<std::int8_t>(nb, -1), nullptr});
  long next_id = 1;
  long nodes = 0;
  long iterations = 0;

  Solution incumbent;
  incumbent.status = Status::kInfeasible;
  double incumbent_value = kInf;
  bool root = true;
  Solution root_solution;

  while (!open.empty()) {
    Node node = open.top();
    if (node.bound >= incumbent_value - gap) break;  // best-first: done
    open.pop();
    if (nodes >= options.node_limit) {
      std::ostringstream os;
      os << "solve_milp: node limit " << options.node_limit
         << " exceeded; incumbent " << incumbent_value << ", bound "
         << node.bound;
      throw ResourceError(os.str());
    }
    ++nodes;

    for (std::size_t k = 0; k < nb; ++k) {
      const int j = p.binary_vars[k];
      if (node.fix[k] < 0) {
        solver.set_var_bounds(j, base[k].lower, base[k].upper);
      } else {
        const double v = node.fix[k];
        solver.set_var_bounds(j, v, v);
      }
    }
    Solution relax = solver.solve(node.warm.get());
    iterations += relax.iterations;
    if (root) {
      root = false;
      if (relax.status == Status::kUnbounded) {
        relax.nodes = nodes;
        return relax;
      }
      root_solution = relax;
    }
    if (relax.status != Status::kOptimal) continue;
    if (relax.objective_value >= incumbent_value - gap) continue;

    int branch = -1;
    double best_frac = options.integrality_tol;
    for (std::size_t k = 0; k < nb; ++k) {
      const double v = relax.primal[p.binary_vars[k]];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > best_frac) {
        best_frac = frac;
        branch = static_cast<int>(k);
      }
    }
    if (branch < 0) {
      incumbent = std::move(relax);
      incumbent_value = incumbent.objective_value;
      continue;
    }

    auto warm = std::make_shared<const Basis>(relax.basis);
    for (std::int8_t v : {0, 1}) {
      const Bounds& b = base[branch];
      if (v < b.lower || v > b.upper) continue;
      Node child{relax.objective_value, next_id++, node.fix, warm};
      child.fix[branch] = v;
      open.push(std::move(child));
    }
  }

  if (incumbent.status != Status::kOptimal) {
    // Infeasible: report the root phase-1 point for attribution.
    Solution out = root_solution;
    out.status = Status::kInfeasible;
    out.nodes = nodes;
    out.iterations = iterations;
    return out;
  }
  const double bound = open.empty() ? incumbent_value
                                    : std::min(incumbent_value,
                                               open.top().bound);
  incumbent.mip_gap = std::max(0.0, incumbent_value - bound);
  incumbent.nodes = nodes;
  incumbent.iterations = iterations;
  return incumbent;
}

}  // namespace cems::lp
