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

#include "cems/scenario/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "cems/error.hpp"

namespace cems::scenario {
namespace {

ExogenousData BellDay() {
  ExogenousData exo;
  for (int t = 0; t < 24; ++t) {
    const bool day = t >= 6 && t < 20;
    exo.clear_sky_irr.push_back(
        day ? 900.0 * std::sin(M_PI * (t - 5.5) / 14.0) : 0.0);
  }
  return exo;
}

double WeightSum(const ScenarioSet& s) {
  return std::accumulate(s.weights.begin(), s.weights.end(), 0.0);
}

TEST(GenerateDayAheadTest, ZeroVarianceGivesClearSky) {
  CovModel cov;
  cov.marginal_std = 0.0;
  ScenarioSet set = generate_day_ahead(BellDay(), cov, 4);
  for (const auto& g : set.irradiance) EXPECT_EQ(g, set.clear_sky);
}

TEST(GenerateDayAheadTest, NightIsExactlyZeroAndSupportIsBounded) {
  CovModel cov;
  cov.marginal_std = 0.5;
  cov.seed = 11;
  ScenarioSet set = generate_day_ahead(BellDay(), cov, 10);
  for (const auto& g : set.irradiance) {
    for (int t = 0; t < 24; ++t) {
      if (t < 6 || t >= 20) EXPECT_EQ(g[t], 0.0);
      EXPECT_GE(g[t], 0.0);
      EXPECT_LE(g[t], set.clear_sky[t]);
    }
  }
  EXPECT_NEAR(WeightSum(set), 1.0, 1e-12);
}

TEST(GenerateDayAheadTest, SampleMeanWithinMonteCarloBound) {
  CovModel cov;
  cov.seed = 5;
  const int kS = 10;
  ScenarioSet set = generate_day_ahead(BellDay(), cov, kS);
  for (int t = 6; t < 20; ++t) {
    double mean = 0.0;
    for (const auto& g : set.irradiance) mean += g[t] / kS;
    const double cs = set.clear_sky[t];
    EXPECT_LE(std::abs(mean - cs), 3.0 * cov.marginal_std * cs / std::sqrt(kS))
        << "t=" << t;
  }
}

TEST(GenerateDayAheadTest, DeterministicPerSeed) {
  CovModel cov;
  cov.seed = 99;
  auto a = generate_day_ahead(BellDay(), cov, 3);
  auto b = generate_day_ahead(BellDay(), cov, 3);
  EXPECT_EQ(a.irradiance, b.irradiance);
  cov.seed = 100;
  auto c = generate_day_ahead(BellDay(), cov, 3);
  EXPECT_NE(a.irradiance, c.irradiance);
}

TEST(GenerateDayAheadTest, RejectsEmptySet) {
  EXPECT_THROW(generate_day_ahead(BellDay(), {}, 0), InputError);
}

TEST(GenerateDayAheadTest, EmpiricalCorrelationFollowsExponential) {
  // Interior of a flat clear-sky profile so clipping acts identically on
  // every step; compare lag-1 correlation of the unclipped lower half.
  ExogenousData exo;
  exo.clear_sky_irr.assign(24, 1000.0);
  CovModel cov;
  cov.marginal_std = 0.1;
  cov.seed = 3;
  const int kS = 4000;
  ScenarioSet set = generate_day_ahead(exo, cov, kS);
  // Clipping maps eps to min(eps, 0); for a bivariate normal with
  // correlation rho the clipped pair has E[m1 m2] computable in closed form,
  // so instead compare the probability that both are clipped:
  // P(e1 > 0, e2 > 0) = 1/4 + asin(rho) / (2 pi).
  const double rho = std::exp(-1.0 / 2.0);
  int both = 0;
  for (const auto& g : set.irradiance) {
    if (g[10] == 1000.0 && g[11] == 1000.0) ++both;
  }
  const double p = 0.25 + std::asin(rho) / (2.0 * M_PI);
  EXPECT_NEAR(static_cast<double>(both) / kS, p,
              4.0 * std::sqrt(p * (1 - p) / kS));
}

TEST(MostProbableTest, UniformWeightsPickMeanTrajectory) {
  ScenarioSet set;
  set.clear_sky = {10, 10};
  set.irradiance = {{0, 0}, {5, 5}, {10, 10}};
  set.weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  EXPECT_EQ(most_probable_index(set), 1);
}

TEST(MostProbableTest, StrictArgmaxWins) {
  ScenarioSet set;
  set.clear_sky = {10};
  set.irradiance = {{0}, {5}, {10}};
  set.weights = {0.5, 0.25, 0.25};
  EXPECT_EQ(most_probable_index(set), 0);
}

TEST(MostProbableTest, IdenticalScenariosPickFirst) {
  ScenarioSet set;
  set.clear_sky = {10};
  set.irradiance = {{3}, {3}, {3}};
  set.weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  EXPECT_EQ(most_probable_index(set), 0);
}

TEST(UpdateHourlyTest, StepZeroEqualsGeneration) {
  CovModel cov;
  cov.seed = 42;
  ScenarioSet day = generate_day_ahead(BellDay(), cov, 10);
  ScenarioSet upd = update_hourly(day, cov, 0, {});
  EXPECT_EQ(upd.irradiance, day.irradiance);
  EXPECT_EQ(upd.weights, day.weights);
}

TEST(UpdateHourlyTest, HistoryMatchesObservations) {
  CovModel cov;
  cov.seed = 8;
  ScenarioSet set = generate_day_ahead(BellDay(), cov, 10);
  std::vector<double> observed = set.irradiance[3];
  for (int k = 1; k <= 24; ++k) {
    ScenarioSet upd = update_hourly(set, cov, k, observed);
    EXPECT_EQ(upd.anchor_step, k);
    EXPECT_NEAR(WeightSum(upd), 1.0, 1e-12);
    for (const auto& g : upd.irradiance) {
      for (int t = 0; t < k; ++t) EXPECT_EQ(g[t], observed[t]);
      for (int t = 0; t < 24; ++t) {
        EXPECT_GE(g[t], 0.0);
        EXPECT_LE(g[t], upd.clear_sky[t]);
      }
    }
  }
}

TEST(UpdateHourlyTest, ClearSkyObservationKeepsClearSkyMean) {
  CovModel cov;
  ScenarioSet set = generate_day_ahead(BellDay(), cov, 5);
  ScenarioSet upd = update_hourly(set, cov, 12, set.clear_sky);
  for (int t = 12; t < 24; ++t) {
    EXPECT_EQ(upd.conditional_mean[t], set.clear_sky[t]);
  }
}

TEST(UpdateHourlyTest, ConditionalMeanDecaysExponentially) {
  CovModel cov;
  cov.corr_length_hours = 2.0;
  cov.seed = 1;
  ScenarioSet set = generate_day_ahead(BellDay(), cov, 10);
  const int k = 10;
  std::vector<double> observed(set.clear_sky.begin(),
                               set.clear_sky.begin() + k);
  observed[k - 1] *= 0.8;
  ScenarioSet upd = update_hourly(set, cov, k, observed);
  const double dev =
      upd.conditional_mean[k + 2] / upd.clear_sky[k + 2] - 1.0;
  EXPECT_NEAR(dev, -0.2 * std::exp(-3.0 / 2.0), 1e-9);
  EXPECT_NEAR(dev, -0.04463, 1e-5);

  // With zero variance every scenario collapses onto the clipped mean.
  cov.marginal_std = 0.0;
  ScenarioSet det = update_hourly(set, cov, k, observed);
  for (const auto& g : det.irradiance) {
    for (int t = k; t < 24; ++t) {
      const double expected = std::clamp(
          set.clear_sky[t] * (1.0 - 0.2 * std::exp(-(t - k + 1) / 2.0)),
          0.0, set.clear_sky[t]);
      EXPECT_NEAR(g[t], expected, 1e-9);
    }
  }
}

TEST(UpdateHourlyTest, RejectsStepBeyondHorizon) {
  CovModel cov;
  ScenarioSet set = generate_day_ahead(BellDay(), cov, 2);
  EXPECT_THROW(update_hourly(set, cov, 25, set.clear_sky), InputError);
  EXPECT_THROW(update_hourly(set, cov, 5, {1.0}), InputError);
}

TEST(ScenarioCsvTest, RoundTrip) {
  CovModel cov;
  cov.seed = 4;
  ScenarioSet set = generate_day_ahead(BellDay(), cov, 3);
  ScenarioSet back = read_scenarios_csv(write_scenarios_csv(set),
                                        set.clear_sky);
  EXPECT_EQ(back.irradiance, set.irradiance);
  EXPECT_EQ(back.weights, set.weights);
}

TEST(ScenarioCsvTest, RejectsBadInput) {
  std::vector<double> cs = {100.0, 100.0};
  EXPECT_THROW(read_scenarios_csv("0,0,1\n", cs), InputError);
  EXPECT_THROW(read_scenarios_csv("t,s,irradiance_wm2\n0,0,1\n", cs),
               InputError);  // step 1 missing
  EXPECT_THROW(
      read_scenarios_csv("t,s,irradiance_wm2\n0,0,1\n1,0,101\n", cs),
      InputError);
}

}  // namespace
}  // namespace cems::scenario
