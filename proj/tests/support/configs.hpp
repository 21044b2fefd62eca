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

// Small hand-sized community configs shared by the model and control tests.

#ifndef CEMS_TESTS_SUPPORT_CONFIGS_HPP_
#define CEMS_TESTS_SUPPORT_CONFIGS_HPP_

#include <cmath>
#include <vector>

#include "cems/domain.hpp"

namespace cems::testing {

// One building, one zone, two 12 h steps, no load and no sun. Import costs
// a little so the battery has no reason to cycle.
inline CommunityConfig TwoStepConfig() {
  CommunityConfig cfg;
  cfg.time.step_hours = 12.0;
  cfg.time.horizon_steps = 2;
  cfg.time.smpc_horizon_N = 2;
  cfg.time.rt_step_seconds = 3600;

  BuildingConfig b;
  b.id = "solo";
  HvacZoneParams z;
  z.name = "z";
  z.heat_capacity = 20.0;
  z.thermal_resistance = 1.0;
  z.cop = 3.0;
  z.p_h_max_kw = 5.0;
  z.t_in_init_c = 24.0;
  b.zones = {z};
  b.ess.capacity_kwh = 10.0;
  b.ess.p_ch_max_kw = 1.0;
  b.ess.p_dis_max_kw = 1.0;
  b.ess.e_min_kwh = 2.0;
  b.ess.e_max_kwh = 8.0;
  b.pv = {1.0, 1.0};
  b.demand_load = {0.0, 0.0};
  b.demand_ev = {0.0, 0.0};
  cfg.buildings = {b};

  cfg.prices.lambda_import = {0.0005, 0.0005};
  cfg.prices.lambda_export = {0.0, 0.0};
  cfg.prices.lambda_comfort = 1.0;
  cfg.prices.lambda_ffr = 0.0;
  cfg.exogenous.t_out = {28.0, 20.0};
  cfg.exogenous.clear_sky_irr = {0.0, 0.0};
  return cfg;
}

// Two buildings over a 24 h day: one with a PV surplus at noon and one with
// a deficit, so pooling the grid connection matters.
inline CommunityConfig PairConfig() {
  CommunityConfig cfg;
  const int T = 24;
  auto sun = [](int t) {
    return (t >= 7 && t < 18) ? 800.0 * std::sin(M_PI * (t - 6.5) / 11.0)
                              : 0.0;
  };
  for (int k = 0; k < 2; ++k) {
    BuildingConfig b;
    b.id = k == 0 ? "producer" : "consumer";
    HvacZoneParams z;
    z.name = "z";
    z.heat_capacity = 10.0;
    z.thermal_resistance = 0.3;
    z.cop = 3.0;
    z.p_h_max_kw = 10.0;
    b.zones = {z};
    b.ess.capacity_kwh = 100.0;
    b.ess.p_ch_max_kw = 40.0;
    b.ess.p_dis_max_kw = 40.0;
    b.ess.e_min_kwh = 25.0;
    b.ess.e_max_kwh = 75.0;
    b.pv = {k == 0 ? 200.0 : 20.0, 0.9};
    for (int t = 0; t < T; ++t) {
      b.demand_load.push_back(k == 0 ? 20.0 : 80.0 + 20.0 * (t >= 9 && t < 18));
      b.demand_ev.push_back(k == 1 && t >= 18 && t < 22 ? 15.0 : 0.0);
    }
    cfg.buildings.push_back(b);
  }
  for (int t = 0; t < T; ++t) {
    cfg.prices.lambda_import.push_back(t >= 10 && t < 18 ? 0.2 : 0.1);
    cfg.prices.lambda_export.push_back(0.04);
    cfg.exogenous.t_out.push_back(27.0 + 4.0 * std::sin(M_PI * (t - 9) / 12.0));
    cfg.exogenous.clear_sky_irr.push_back(sun(t));
  }
  cfg.prices.lambda_comfort = 20.0;
  cfg.prices.lambda_ffr = 0.01;
  return cfg;
}

}  // namespace cems::testing

#endif  // CEMS_TESTS_SUPPORT_CONFIGS_HPP_
