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

#include "cems/domain.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cems/error.hpp"

namespace cems {
namespace {

CommunityConfig MinimalConfig() {
  CommunityConfig cfg;
  BuildingConfig b;
  b.id = "office";
  HvacZoneParams z;
  z.name = "z0";
  z.heat_capacity = 100.0;
  z.thermal_resistance = 0.03;
  z.cop = 3.0;
  z.p_h_max_kw = 100.0;
  b.zones.push_back(z);
  b.ess.capacity_kwh = 1000.0;
  b.ess.p_ch_max_kw = 250.0;
  b.ess.p_dis_max_kw = 250.0;
  b.ess.e_min_kwh = 200.0;
  b.ess.e_max_kwh = 800.0;
  b.pv.p_max_kw = 1000.0;
  b.pv.efficiency = 0.9;
  b.demand_load.assign(24, 100.0);
  b.demand_ev.assign(24, 0.0);
  cfg.buildings.push_back(b);
  cfg.prices.lambda_import.assign(24, 0.1);
  cfg.prices.lambda_export.assign(24, 0.05);
  cfg.prices.lambda_comfort = 10.0;
  cfg.prices.lambda_ffr = 0.01;
  cfg.exogenous.t_out.assign(24, 30.0);
  cfg.exogenous.clear_sky_irr.assign(24, 0.0);
  return cfg;
}

TEST(ValidateConfigTest, PublishedEfficienciesAreValid) {
  CommunityConfig cfg = MinimalConfig();
  cfg.buildings[0].ess.eta_ch = 0.9;
  cfg.buildings[0].ess.eta_dis = 0.8;
  EXPECT_TRUE(validate_config(cfg).empty());
}

TEST(ValidateConfigTest, DegenerateTemperatureInterval) {
  CommunityConfig cfg = MinimalConfig();
  auto& z = cfg.buildings[0].zones[0];
  z.temp_min_c = z.temp_max_c = z.t_in_init_c = 22.0;
  auto v = validate_config(cfg);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].path, "buildings[0].zones[0].temp_bounds");
}

TEST(ValidateConfigTest, UnstableThermalDiscretization) {
  CommunityConfig cfg = MinimalConfig();
  auto& z = cfg.buildings[0].zones[0];
  z.heat_capacity = 10.0;
  z.thermal_resistance = 0.05;  // C*R = 0.5 h < 1 h step
  // 1 - 1/(CR) = -1, outside (0, 1).
  ASSERT_LT(1.0 - 1.0 / (z.heat_capacity * z.thermal_resistance), 0.0);
  auto v = validate_config(cfg);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].path, "buildings[0].zones[0]");
  EXPECT_NE(v[0].message.find("unstable"), std::string::npos);
}

TEST(ValidateConfigTest, ReportsEveryViolationWithLocator) {
  CommunityConfig cfg = MinimalConfig();
  cfg.prices.lambda_export[5] = 0.2;  // above import
  cfg.buildings[0].ess.eta_ch = 0.0;
  cfg.buildings[0].demand_load.pop_back();
  cfg.time.smpc_horizon_N = 0;
  auto v = validate_config(cfg);
  std::vector<std::string> paths;
  for (const auto& x : v) paths.push_back(x.path);
  EXPECT_EQ(paths, (std::vector<std::string>{
                       "time.smpc_horizon_N", "buildings[0].ess.eta_ch",
                       "buildings[0].demand_load", "prices.lambda_export[5]"}));
}

TEST(ValidateConfigTest, TimeGridInvariants) {
  CommunityConfig cfg = MinimalConfig();
  cfg.time.rt_step_seconds = 7;  // 3600 % 7 != 0
  EXPECT_FALSE(validate_config(cfg).empty());
  cfg = MinimalConfig();
  cfg.time.step_hours = 0.5;  // 0.5 * 24 != 24
  EXPECT_FALSE(validate_config(cfg).empty());
}

TEST(ValidateConfigTest, RegulationSignalBounds) {
  CommunityConfig cfg = MinimalConfig();
  cfg.exogenous.reg_signal.assign(24 * 1800, 0.0);
  EXPECT_TRUE(validate_config(cfg).empty());
  cfg.exogenous.reg_signal[100] = 1.5;
  EXPECT_FALSE(validate_config(cfg).empty());
}

TEST(ValidateConfigTest, IdempotentAndSideEffectFree) {
  CommunityConfig cfg = MinimalConfig();
  cfg.buildings[0].ess.soc_boundary_frac = 0.9;
  cfg.prices.lambda_ffr = -1.0;
  const auto first = validate_config(cfg);
  const auto second = validate_config(cfg);
  EXPECT_EQ(first, second);
  EXPECT_EQ(first.size(), 2u);
}

TEST(PvOutputTest, Examples) {
  EXPECT_DOUBLE_EQ(pv_output({1000.0, 1.0}, 1000.0), 1000.0);
  EXPECT_DOUBLE_EQ(pv_output({1000.0, 0.9}, 500.0), 450.0);
  EXPECT_DOUBLE_EQ(pv_output({1234.0, 0.7}, 0.0), 0.0);
  EXPECT_THROW(pv_output({1000.0, 1.0}, -1.0), InputError);
}

TEST(PvOutputTest, HomogeneousOfDegreeOne) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> g(0.0, 1200.0);
  const PvParams pv{4000.0, 0.87};
  for (int k = 0; k < 1000; ++k) {
    const double x = g(rng);
    EXPECT_NEAR(pv_output(pv, 2.0 * x), 2.0 * pv_output(pv, x), 1e-9);
  }
}

TEST(ComfortSigmaTest, PublishedCurve) {
  const ComfortCoeffs k;
  // Direct evaluation of 0.01087 T^2 - 0.5541 T + 6.8587.
  EXPECT_NEAR(comfort_sigma(k, 18.0), 0.40678, 1e-12);
  EXPECT_NEAR(comfort_sigma(k, 26.0), -0.19978, 1e-12);
  const double vertex = 0.5541 / (2.0 * 0.01087);
  EXPECT_NEAR(vertex, 25.487, 1e-3);
  EXPECT_NEAR(comfort_sigma(k, vertex), -0.2026, 1e-4);
}

TEST(ComfortSigmaTest, ConvexOnRandomPairs) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> g(0.0, 40.0);
  const ComfortCoeffs k;
  for (int n = 0; n < 1000; ++n) {
    double t1 = g(rng), t2 = g(rng);
    EXPECT_LE(comfort_sigma(k, 0.5 * (t1 + t2)),
              0.5 * (comfort_sigma(k, t1) + comfort_sigma(k, t2)) + 1e-12);
  }
}

TEST(EtpStepTest, FixedPointAndKnownStep) {
  HvacZoneParams z;
  z.heat_capacity = 2.0;
  z.thermal_resistance = 2.0;
  z.cop = 1.0;
  EXPECT_DOUBLE_EQ(etp_step(z, 1.0, 24.0, 24.0, 0.0), 24.0);
  // a = 1/(CR) = 0.25: 0.75 * 24 + 0.25 * 32 - (1/2) * 4 = 24.
  EXPECT_DOUBLE_EQ(etp_step(z, 1.0, 24.0, 32.0, 4.0), 24.0);
}

TEST(EtpStepTest, LargeTimeConstantFreezesTemperature) {
  HvacZoneParams z;
  z.thermal_resistance = 1.0;
  z.cop = 3.0;
  double prev = INFINITY;
  for (double c : {1e2, 1e4, 1e6, 1e8}) {
    z.heat_capacity = c;
    const double change = std::abs(etp_step(z, 1.0, 24.0, 35.0, 50.0) - 24.0);
    EXPECT_LT(change, prev);
    prev = change;
  }
  EXPECT_LT(prev, 1e-5);
}

}  // namespace
}  // namespace cems
