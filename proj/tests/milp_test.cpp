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

#include <gtest/gtest.h>

#include <random>

#include "cems/error.hpp"
#include "support/random_programs.hpp"

namespace cems::lp {
namespace {

TEST(SolveMilpTest, IntegralRelaxationMatchesLp) {
  MilpProblem p;
  const int z = p.lp.add_var("z", 0.0, 1.0, -2.0);
  const int x = p.lp.add_var("x", 0.0, 4.0, -1.0);
  p.lp.add_row({{x, 1.0}, {z, 1.0}}, Sense::kLe, 3.0);
  p.binary_vars = {z};
  Solution lp = solve_lp(p.lp);
  Solution milp = solve_milp(p);
  ASSERT_EQ(milp.status, Status::kOptimal);
  EXPECT_EQ(milp.objective_value, lp.objective_value);
  EXPECT_EQ(milp.primal, lp.primal);
  EXPECT_EQ(milp.nodes, 1);
}

TEST(SolveMilpTest, KnapsackMatchesExhaustiveEnumeration) {
  const double value[6] = {10, 13, 7, 8, 9, 4};
  const double weight[6] = {5, 7, 3, 4, 6, 2};
  const double capacity = 15;
  MilpProblem p;
  std::vector<Term> row;
  for (int k = 0; k < 6; ++k) {
    p.binary_vars.push_back(p.lp.add_var("z" + std::to_string(k), 0.0, 1.0,
                                         -value[k]));
    row.push_back({k, weight[k]});
  }
  p.lp.add_row(row, Sense::kLe, capacity);

  double best = 0.0;
  for (int mask = 0; mask < 64; ++mask) {
    double w = 0.0, v = 0.0;
    for (int k = 0; k < 6; ++k) {
      if (mask >> k & 1) {
        w += weight[k];
        v += value[k];
      }
    }
    if (w <= capacity) best = std::max(best, v);
  }
  ASSERT_EQ(best, 30.0);  // items 0, 1, 2 fill the sack exactly

  Solution s = solve_milp(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.objective_value, -best, 1e-9);
  for (int j : p.binary_vars) {
    EXPECT_NEAR(s.primal[j], std::round(s.primal[j]), 1e-6);
  }
}

TEST(SolveMilpTest, ContradictoryFixingsAreInfeasible) {
  MilpProblem p;
  const int z1 = p.lp.add_var("z1", 0.0, 1.0, 0.0);
  const int z2 = p.lp.add_var("z2", 0.0, 1.0, 0.0);
  p.lp.add_row({{z1, 1.0}, {z2, 1.0}}, Sense::kLe, 1.0);
  p.lp.add_row({{z1, 1.0}}, Sense::kEq, 1.0);
  p.lp.add_row({{z2, 1.0}}, Sense::kEq, 1.0);
  p.binary_vars = {z1, z2};
  EXPECT_EQ(solve_milp(p).status, Status::kInfeasible);
}

TEST(SolveMilpTest, FractionalRelaxationNeedsBranching) {
  // max x1 + x2 s.t. 2 x1 + 2 x2 <= 3: LP gives 1.5, MILP gives 1.
  MilpProblem p;
  const int a = p.lp.add_var("a", 0.0, 1.0, -1.0);
  const int b = p.lp.add_var("b", 0.0, 1.0, -1.0);
  p.lp.add_row({{a, 2.0}, {b, 2.0}}, Sense::kLe, 3.0);
  p.binary_vars = {a, b};
  Solution relax = solve_lp(p.lp);
  Solution s = solve_milp(p);
  EXPECT_NEAR(relax.objective_value, -1.5, 1e-9);
  EXPECT_NEAR(s.objective_value, -1.0, 1e-9);
  EXPECT_GT(s.nodes, 1);
}

TEST(SolveMilpTest, RandomInstancesMatchEnumeration) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    MilpProblem p = testing::RandomMilp(rng);
    auto oracle = testing::EnumerationOptimum(p);
    Solution s = solve_milp(p);
    if (!oracle) {
      EXPECT_EQ(s.status, Status::kInfeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(s.status, Status::kOptimal) << "trial " << trial;
    EXPECT_NEAR(s.objective_value, *oracle, 1e-6) << "trial " << trial;
    // Relaxation bound never exceeds the integer optimum.
    Solution relax = solve_lp(p.lp);
    EXPECT_LE(relax.objective_value, s.objective_value + 1e-9);
    // Determinism.
    Solution again = solve_milp(p);
    EXPECT_EQ(again.objective_value, s.objective_value);
    EXPECT_EQ(again.primal, s.primal);
  }
}

TEST(SolveMilpTest, NodeLimitIsResourceError) {
  MilpProblem p;
  std::vector<Term> row;
  for (int k = 0; k < 12; ++k) {
    p.binary_vars.push_back(p.lp.add_var("z" + std::to_string(k), 0.0, 1.0,
                                         -1.0));
    row.push_back({k, 2.0});
  }
  p.lp.add_row(row, Sense::kLe, 11.0);
  MilpOptions opt;
  opt.node_limit = 3;
  EXPECT_THROW(solve_milp(p, {}, 1e-6, opt), ResourceError);
}

TEST(SolveMilpTest, RejectsNonBinaryBounds) {
  MilpProblem p;
  p.binary_vars.push_back(p.lp.add_var("z", 0.0, 2.0, 1.0));
  EXPECT_THROW(solve_milp(p), InputError);
}

}  // namespace
}  // namespace cems::lp
