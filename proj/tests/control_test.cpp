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

#include "cems/control/control.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "cems/error.hpp"
#include "support/configs.hpp"

namespace cems::control {
namespace {

using model::Role;

CommunityConfig OneHourConfig() {
  CommunityConfig cfg = testing::TwoStepConfig();
  cfg.time.step_hours = 1.0;
  cfg.time.rt_step_seconds = 900;  // four substeps
  return cfg;
}

BuildingSlice HandSlice() {
  BuildingSlice s;
  s.p_ch = 0.0;
  s.p_dis = 0.2;
  s.r_e_up = 0.3;
  s.r_dis_up = 0.3;
  s.r_e_dn = 0.5;
  s.r_ch_dn = 0.3;
  s.r_dis_dn = 0.2;
  s.p_h = {3.0};
  s.r_h_up = {0.7};
  s.r_h_dn = {1.0};
  s.r_up = {1.0};
  s.r_dn = {1.5};
  return s;
}

TEST(Level3Test, ZeroSignalLeavesLevel2ControlsAlone) {
  CommunityConfig cfg = OneHourConfig();
  Level3Result r = run_level3(cfg, {HandSlice()}, std::vector<double>(4, 0.0));
  ASSERT_EQ(r.substeps, 4);
  for (int n = 0; n < 4; ++n) {
    EXPECT_EQ(r.p_ch[n][0], 0.0);
    EXPECT_EQ(r.p_dis[n][0], 0.2);
    EXPECT_EQ(r.p_h[n][0][0], 3.0);
    EXPECT_EQ(r.deployed_up[n][0][0], 0.0);
    EXPECT_EQ(r.deployed_dn[n][0][0], 0.0);
  }
  EXPECT_EQ(r.saturation_events, 0);
}

TEST(Level3Test, FullUpCallSplitsByCommittedShare) {
  CommunityConfig cfg = OneHourConfig();
  cfg.buildings[0].ess.p_dis_max_kw = 100.0;
  cfg.buildings[0].zones[0].p_h_max_kw = 200.0;
  BuildingSlice s;
  s.p_dis = 10.0;
  s.r_e_up = 30.0;
  s.r_dis_up = 30.0;
  s.p_h = {90.0};
  s.r_h_up = {70.0};
  s.r_h_dn = {0.0};
  s.r_up = {100.0};
  s.r_dn = {0.0};
  Level3Result r = run_level3(cfg, {s}, {1.0});
  // The battery gives 30 kW more, the chiller draws 70 kW less.
  EXPECT_DOUBLE_EQ(r.p_dis[0][0] - s.p_dis, 30.0);
  EXPECT_DOUBLE_EQ(s.p_h[0] - r.p_h[0][0][0], 70.0);
  EXPECT_DOUBLE_EQ(r.deployed_up[0][0][0], 100.0);
  EXPECT_DOUBLE_EQ(r.deployed_dn[0][0][0], 0.0);
}

TEST(Level3Test, DownCallNeverExceedsCommitment) {
  CommunityConfig cfg = OneHourConfig();
  const BuildingSlice s = HandSlice();
  Level3Result r = run_level3(cfg, {s}, {-1.0, -0.25, 0.5, 1.0});
  // Full down call: charge 0.3 more, discharge 0.2 less, chiller +1.0.
  EXPECT_NEAR(r.p_ch[0][0], 0.3, 1e-12);
  EXPECT_NEAR(r.p_dis[0][0], 0.0, 1e-12);
  EXPECT_NEAR(r.p_h[0][0][0], 4.0, 1e-12);
  EXPECT_NEAR(r.deployed_dn[0][0][0], 1.5, 1e-12);
  EXPECT_NEAR(r.deployed_dn[1][0][0], 0.375, 1e-12);
  EXPECT_NEAR(r.deployed_up[2][0][0], 0.5, 1e-12);
  for (int n = 0; n < 4; ++n) {
    EXPECT_LE(r.deployed_up[n][0][0], s.r_up[0] + 1e-12);
    EXPECT_LE(r.deployed_dn[n][0][0], s.r_dn[0] + 1e-12);
  }
}

TEST(Level3Test, AlternatingFullCallsAreEnergyNeutralAtTheMeter) {
  CommunityConfig cfg = OneHourConfig();
  BuildingSlice s = HandSlice();
  // Symmetric commitment.
  s.r_e_dn = 0.3;
  s.r_ch_dn = 0.1;
  s.r_dis_dn = 0.2;
  s.r_h_dn = {0.7};
  s.r_dn = {1.0};
  Level3Result r = run_level3(cfg, {s}, {1.0, -1.0, 1.0, -1.0});
  double dev = 0.0;
  for (int n = 0; n < 4; ++n) {
    dev += (r.p_ch[n][0] - r.p_dis[n][0] + r.p_h[n][0][0]) -
           (s.p_ch - s.p_dis + s.p_h[0]);
  }
  EXPECT_NEAR(dev, 0.0, 1e-12);
}

TEST(Level3Test, RejectsSignalOutsideUnitRange) {
  CommunityConfig cfg = OneHourConfig();
  EXPECT_THROW(run_level3(cfg, {HandSlice()}, {0.0, 1.5}), InputError);
  EXPECT_THROW(run_level3(cfg, {HandSlice()}, {-1.0001}), InputError);
  EXPECT_THROW(
      run_level3(cfg, {HandSlice()},
                 {std::numeric_limits<double>::quiet_NaN()}),
      InputError);
}

Level3Result Idle(int substeps, double p_ch, double p_dis, double p_h) {
  Level3Result u;
  u.substeps = substeps;
  u.w.assign(substeps, 0.0);
  u.p_ch.assign(substeps, {p_ch});
  u.p_dis.assign(substeps, {p_dis});
  u.p_h.assign(substeps, {{p_h}});
  u.deployed_up.assign(substeps, {{0.0}});
  u.deployed_dn = u.deployed_up;
  return u;
}

TEST(PlantStepTest, ZoneAtOutdoorTemperatureWithHvacOffStays) {
  CommunityConfig cfg = OneHourConfig();
  PlantState st = PlantState::initial(cfg);
  st.t_in_c[0][0] = cfg.exogenous.t_out[0];
  PlantStepOutcome out = plant_step(cfg, st, Idle(4, 0, 0, 0), 0.0,
                                    Mode::cems());
  EXPECT_DOUBLE_EQ(out.next.t_in_c[0][0], cfg.exogenous.t_out[0]);
  EXPECT_EQ(out.next.step, 1);
}

TEST(PlantStepTest, HandComputedEtpStep) {
  CommunityConfig cfg = OneHourConfig();
  HvacZoneParams& z = cfg.buildings[0].zones[0];
  z.heat_capacity = 2.0;
  z.thermal_resistance = 2.0;
  z.cop = 4.0;
  z.temp_max_c = 40.0;
  cfg.exogenous.t_out[0] = 32.0;
  PlantState st = PlantState::initial(cfg);
  st.t_in_c[0][0] = 24.0;
  // cop * p = 4 kW of cooling: 0.75 * 24 + 0.25 * 32 - 0.5 * 4.
  PlantStepOutcome out = plant_step(cfg, st, Idle(4, 0, 0, 1.0), 0.0,
                                    Mode::cems());
  EXPECT_NEAR(out.next.t_in_c[0][0], 24.0, 1e-12);
  EXPECT_NEAR(out.p_h_mean[0][0], 1.0, 1e-12);
}

TEST(PlantStepTest, LargeThermalMassBarelyMoves) {
  CommunityConfig cfg = OneHourConfig();
  cfg.buildings[0].zones[0].heat_capacity = 1e9;
  PlantState st = PlantState::initial(cfg);
  PlantStepOutcome out = plant_step(cfg, st, Idle(4, 0, 0, 5.0), 0.0,
                                    Mode::cems());
  EXPECT_NEAR(out.next.t_in_c[0][0], st.t_in_c[0][0], 1e-7);
}

TEST(PlantStepTest, ChargesWithEfficiencyAndBillsTheImport) {
  CommunityConfig cfg = OneHourConfig();
  PlantState st = PlantState::initial(cfg);
  PlantStepOutcome out = plant_step(cfg, st, Idle(4, 1.0, 0.0, 0.0), 0.0,
                                    Mode::cems());
  EXPECT_NEAR(out.next.soc_kwh[0], 5.0 + 0.9, 1e-12);
  EXPECT_NEAR(out.import_kwh, 1.0, 1e-12);
  EXPECT_NEAR(out.energy_cost, 0.0005, 1e-15);
  EXPECT_EQ(out.clip_events, 0);

  PlantStepOutcome dis = plant_step(cfg, st, Idle(4, 0.0, 0.8, 0.0), 0.0,
                                    Mode::cems());
  EXPECT_NEAR(dis.next.soc_kwh[0], 5.0 - 1.0, 1e-12);
  EXPECT_NEAR(dis.export_kwh, 0.8, 1e-12);
}

TEST(PlantStepTest, ClipsSocAtPhysicalLimitsAndLogs) {
  CommunityConfig cfg = OneHourConfig();
  PlantState st = PlantState::initial(cfg);
  st.soc_kwh[0] = 0.1;
  PlantStepOutcome out = plant_step(cfg, st, Idle(4, 0.0, 1.0, 0.0), 0.0,
                                    Mode::cems());
  EXPECT_EQ(out.next.soc_kwh[0], 0.0);
  EXPECT_GT(out.clip_events, 0);
  EXPECT_FALSE(out.log.empty());
}

TEST(PlantStepTest, CommunityMeterNetsBuildingsButBuildingMetersDoNot) {
  CommunityConfig cfg = testing::PairConfig();
  PlantState st = PlantState::initial(cfg);
  st.step = 12;
  const int n = 3;
  Level3Result u;
  u.substeps = n;
  u.w.assign(n, 0.0);
  u.p_ch.assign(n, {0.0, 0.0});
  u.p_dis.assign(n, {0.0, 0.0});
  u.p_h.assign(n, {{0.0}, {0.0}});
  const double g = cfg.exogenous.clear_sky_irr[12];
  // Independent meter arithmetic.
  const double net0 = 20.0 - 200.0 * g / 1000.0 * 0.9;
  const double net1 = 100.0 - 20.0 * g / 1000.0 * 0.9;
  ASSERT_LT(net0, 0.0);
  ASSERT_GT(net1, 0.0);
  PlantStepOutcome c = plant_step(cfg, st, u, g, Mode::cems());
  PlantStepOutcome b = plant_step(cfg, st, u, g, Mode::bems(0));
  const double lam_im = cfg.prices.lambda_import[12];
  const double lam_ex = cfg.prices.lambda_export[12];
  const double pooled = net0 + net1;
  EXPECT_NEAR(c.energy_cost,
              pooled > 0 ? lam_im * pooled : lam_ex * pooled, 1e-9);
  EXPECT_NEAR(b.energy_cost, lam_im * net1 + lam_ex * net0, 1e-9);
  EXPECT_LT(c.energy_cost, b.energy_cost);
}

// Deterministic day: one zero-variance scenario, the sun as forecast, no
// regulation.
CommunityConfig CalmDay() {
  CommunityConfig cfg = testing::PairConfig();
  cfg.exogenous.truth_irradiance = cfg.exogenous.clear_sky_irr;
  cfg.time.rt_step_seconds = 600;
  return cfg;
}

SimOptions CalmOptions(Mode mode) {
  SimOptions o;
  o.seed = 11;
  o.mode = mode;
  o.num_scenarios = 1;
  o.cov.marginal_std = 0.0;
  return o;
}

TEST(SimulateDayTest, CalmDayRealizesTheDayAheadObjective) {
  for (Mode mode : {Mode::cems(), Mode::bems(0)}) {
    CommunityConfig cfg = CalmDay();
    ClosedLoopTrace tr = simulate_day(cfg, CalmOptions(mode));
    Summary s = compute_metrics(tr);
    EXPECT_NEAR(s.total_cost, s.level1_objective,
                1e-4 * std::abs(s.level1_objective))
        << s.mode;
    EXPECT_NEAR(s.slack_total, 0.0, 1e-7);
    EXPECT_EQ(s.honor_violations, 0);
    EXPECT_EQ(s.temp_excursions, 0);
    EXPECT_EQ(s.soc_violations, 0);
  }
}

TEST(SimulateDayTest, FirstStepMatchesPlanWhenStateIsOnPlan) {
  CommunityConfig cfg = CalmDay();
  scenario::CovModel cov;
  cov.marginal_std = 0.0;
  scenario::ScenarioSet day =
      scenario::generate_day_ahead(cfg.exogenous, cov, 1);
  DayAheadPlan plan = run_level1(cfg, day);
  PlantState st = PlantState::initial(cfg);
  st.step = 5;
  for (int b = 0; b < 2; ++b) {
    st.soc_kwh[b] = plan.at(Role::kE, 5, b);
    st.t_in_c[b][0] = plan.at(Role::kTIn, 5, b, 0);
  }
  Level2Result r = run_level2_step(cfg, 5, plan, day, st);
  EXPECT_NEAR(r.slack_total, 0.0, 1e-7);
  for (int b = 0; b < 2; ++b) {
    EXPECT_NEAR(r.soc_next[b], plan.at(Role::kE, 6, b), 1e-5);
    EXPECT_NEAR(r.t_in_next[b][0], plan.at(Role::kTIn, 6, b, 0), 1e-5);
    EXPECT_NEAR(r.slice[b].r_up[0], plan.at(Role::kRUp, 5, b, 0), 1e-9);
  }
}

TEST(SimulateDayTest, PvCollapseIsAbsorbedByImport) {
  CommunityConfig cfg = CalmDay();
  scenario::CovModel cov;
  cov.seed = 3;
  scenario::ScenarioSet day =
      scenario::generate_day_ahead(cfg.exogenous, cov, 5);
  std::vector<double> truth = cfg.exogenous.clear_sky_irr;
  truth[12] = 0.0;
  SimOptions o;
  o.seed = 3;
  o.mode = Mode::cems();
  ClosedLoopTrace tr = simulate_day(cfg, o, day, truth);
  Summary s = compute_metrics(tr);
  EXPECT_NEAR(s.slack_total, 0.0, 1e-7);
  EXPECT_EQ(s.honor_violations, 0);
  EXPECT_EQ(s.temp_excursions, 0);
  EXPECT_EQ(tr.hours[12].pv_kw[0], 0.0);
  // Nothing left to export at the collapsed hour.
  EXPECT_GT(tr.hours[12].import_kwh, 0.0);
}

TEST(SimulateDayTest, RegulationIsHonoredEverySubstep) {
  CommunityConfig cfg = CalmDay();
  const int n = cfg.time.horizon_steps * cfg.time.substeps_per_step();
  for (int k = 0; k < n; ++k) {
    cfg.exogenous.reg_signal.push_back(std::sin(0.7 * k));
  }
  ClosedLoopTrace tr = simulate_day(cfg, CalmOptions(Mode::cems()));
  Summary s = compute_metrics(tr);
  EXPECT_EQ(s.honor_violations, 0);
  EXPECT_EQ(s.temp_excursions, 0);
  EXPECT_EQ(s.soc_violations, 0);
  EXPECT_GT(s.ffr_deployed_kwh, 0.0);
  EXPECT_LE(s.ffr_deployed_kwh, s.ffr_committed_kwh + 1e-9);
}

TEST(SimulateDayTest, SameSeedSameTrace) {
  CommunityConfig cfg = testing::PairConfig();
  cfg.time.rt_step_seconds = 900;
  SimOptions o;
  o.seed = 5;
  o.num_scenarios = 3;
  ClosedLoopTrace a = simulate_day(cfg, o);
  ClosedLoopTrace b = simulate_day(cfg, o);
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_EQ(a.warnings, b.warnings);
  o.seed = 6;
  ClosedLoopTrace c = simulate_day(cfg, o);
  EXPECT_NE(a.rows, c.rows);
}

TEST(ComputeMetricsTest, RejectsIncompleteTrace) {
  CommunityConfig cfg = CalmDay();
  ClosedLoopTrace tr = simulate_day(cfg, CalmOptions(Mode::cems()));
  tr.hours.pop_back();
  EXPECT_THROW(compute_metrics(tr), InputError);
  ClosedLoopTrace empty;
  EXPECT_THROW(compute_metrics(empty), InputError);
}

TEST(ComputeMetricsTest, NetDemandIsImportMinusExport) {
  CommunityConfig cfg = CalmDay();
  Summary s = compute_metrics(simulate_day(cfg, CalmOptions(Mode::cems())));
  ASSERT_EQ(s.net_demand_kwh.size(), 24u);
  const double sum =
      std::accumulate(s.net_demand_kwh.begin(), s.net_demand_kwh.end(), 0.0);
  EXPECT_NEAR(sum, s.grid_import_kwh - s.grid_export_kwh, 1e-9);
  EXPECT_NEAR(s.cumulative_net_demand_kwh, sum, 1e-9);
  EXPECT_NEAR(s.total_cost,
              s.energy_cost + s.comfort_cost - s.ffr_revenue, 1e-9);
}

}  // namespace
}  // namespace cems::control
