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

#include "cems/lp/lp_format.hpp"

#include <gtest/gtest.h>

#include <random>

#include "cems/error.hpp"
#include "support/random_programs.hpp"

namespace cems::lp {
namespace {

TEST(LpFormatTest, WritesReadableSections) {
  MilpProblem p;
  const int x = p.lp.add_var("x", 0.0, kInf, -1.5);
  const int z = p.lp.add_var("z", 0.0, 1.0, 0.1);
  p.lp.add_row({{x, 1.0}, {z, -1000.0}}, Sense::kLe, 0.0, "cap");
  p.binary_vars = {z};
  EXPECT_EQ(write_lp_format(p),
            "\\ cems lp dump: 2 vars, 1 rows, 1 binaries\n"
            "Minimize\n"
            " obj: -1.5 x +0.1 z\n"
            "Subject To\n"
            " cap: +1 x -1000 z <= 0\n"
            "Bounds\n"
            " 0 <= x <= inf\n"
            " 0 <= z <= 1\n"
            "Binaries\n"
            " z\n"
            "End\n");
}

TEST(LpFormatTest, RoundTripIsBitExact) {
  std::mt19937_64 rng(123);
  for (int k = 0; k < 20; ++k) {
    MilpProblem p = testing::RandomMilp(rng);
    // Awkward values: irrational-looking coefficients and free bounds.
    p.lp.objective[0] = 1.0 / 3.0;
    p.lp.var_bounds[p.lp.num_vars() - 1] = {-kInf, 1e-300};
    MilpProblem q = read_lp_format(write_lp_format(p));
    EXPECT_EQ(q.lp, p.lp);
    EXPECT_EQ(q.binary_vars, p.binary_vars);
  }
}

TEST(LpFormatTest, RejectsUndeclaredVariable) {
  const char* text =
      "Minimize\n obj: +1 x\nSubject To\nBounds\n 0 <= y <= 1\nEnd\n";
  EXPECT_THROW(read_lp_format(text), InputError);
}

TEST(LpFormatTest, ReportsLineOfMalformedNumber) {
  const char* text = "Minimize\n obj:\nSubject To\n r: +1 x <= abc\nEnd\n";
  try {
    read_lp_format(text);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

}  // namespace
}  // namespace cems::lp
