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

#include "cems/lp/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cems::lp {

int LinearProgram::add_var(std::string name, double lower, double upper,
                           double cost) {
  var_bounds.push_back({lower, upper});
  objective.push_back(cost);
  var_names.push_back(std::move(name));
  return num_vars() - 1;
}

int LinearProgram::add_row(std::vector<Term> terms, Sense sense, double rhs,
                           std::string name) {
  constraints.push_back({std::move(terms), sense, rhs, std::move(name)});
  return num_rows() - 1;
}

std::vector<std::string> LinearProgram::structural_errors() const {
  std::vector<std::string> errs;
  const int n = num_vars();
  if (static_cast<int>(objective.size()) != n ||
      static_cast<int>(var_names.size()) != n) {
    errs.push_back("objective/var_names size differs from var_bounds");
  }
  for (int j = 0; j < n; ++j) {
    const Bounds& b = var_bounds[j];
    if (std::isnan(b.lower) || std::isnan(b.upper) || b.lower > b.upper ||
        b.lower == kInf || b.upper == -kInf) {
      std::ostringstream os;
      os << "variable " << j << " has invalid bounds [" << b.lower << ", "
         << b.upper << "]";
      errs.push_back(os.str());
    }
    if (j < static_cast<int>(objective.size()) &&
        !std::isfinite(objective[j])) {
      errs.push_back("objective coefficient " + std::to_string(j) +
                     " not finite");
    }
  }
  for (int i = 0; i < num_rows(); ++i) {
    const Row& r = constraints[i];
    for (const Term& t : r.terms) {
      if (t.var < 0 || t.var >= n) {
        errs.push_back("row " + std::to_string(i) +
                       " references column out of range");
        break;
      }
      if (!std::isfinite(t.coef)) {
        errs.push_back("row " + std::to_string(i) + " has non-finite coef");
        break;
      }
    }
    if (std::isnan(r.rhs) || (r.sense == Sense::kEq && !std::isfinite(r.rhs))) {
      errs.push_back("row " + std::to_string(i) + " has invalid rhs");
    }
  }
  return errs;
}

std::vector<std::string> MilpProblem::structural_errors() const {
  std::vector<std::string> errs = lp.structural_errors();
  for (int j : binary_vars) {
    if (j < 0 || j >= lp.num_vars()) {
      errs.push_back("binary index " + std::to_string(j) + " out of range");
      continue;
    }
    const Bounds& b = lp.var_bounds[j];
    if (b.lower < 0.0 || b.upper > 1.0) {
      errs.push_back("binary " + std::to_string(j) +
                     " has bounds outside [0, 1]");
    }
  }
  return errs;
}

double row_activity(const Row& row, std::span<const double> x) {
  double s = 0.0;
  for (const Term& t : row.terms) s += t.coef * x[t.var];
  return s;
}

namespace {

double row_violation(const Row& r, double act) {
  switch (r.sense) {
    case Sense::kLe:
      return std::max(0.0, act - r.rhs);
    case Sense::kGe:
      return std::max(0.0, r.rhs - act);
    case Sense::kEq:
      return std::abs(act - r.rhs);
  }
  return 0.0;
}

}  // namespace

double max_violation(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  for (int j = 0; j < lp.num_vars(); ++j) {
    worst = std::max(worst, lp.var_bounds[j].lower - x[j]);
    worst = std::max(worst, x[j] - lp.var_bounds[j].upper);
  }
  for (const Row& r : lp.constraints) {
    worst = std::max(worst, row_violation(r, row_activity(r, x)));
  }
  return worst;
}

std::vector<int> violated_rows(const LinearProgram& lp,
                               std::span<const double> x, double tol) {
  std::vector<int> out;
  for (int i = 0; i < lp.num_rows(); ++i) {
    const Row& r = lp.constraints[i];
    if (row_violation(r, row_activity(r, x)) > tol) out.push_back(i);
  }
  return out;
}

}  // namespace cems::lp
