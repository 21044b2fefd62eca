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

#include "cems/io/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cems/scenario/scenario.hpp"

namespace cems::io {
namespace {

constexpr int kSteps = 24;
constexpr std::uint64_t kSignalSeed = 20240601;
constexpr std::uint64_t kTruthSeed = 77;

// Half-sine over [a, b) hours, zero elsewhere.
double bump(int t, double a, double b) {
  const double x = t + 0.5;
  if (x < a || x >= b) return 0.0;
  return std::sin(M_PI * (x - a) / (b - a));
}

std::vector<double> profile(double base, double peak, double a, double b) {
  std::vector<double> out(kSteps);
  for (int t = 0; t < kSteps; ++t) out[t] = base + peak * bump(t, a, b);
  return out;
}

HvacZoneParams zone(const std::string& name, double p_max, double c) {
  HvacZoneParams z;
  z.name = name;
  z.cop = 3.0;
  z.p_h_max_kw = p_max;
  z.heat_capacity = c;
  z.thermal_resistance = 3.0 / c;  // three hour time constant
  z.t_in_init_c = 24.0;
  return z;
}

EssParams battery() {
  EssParams e;
  e.capacity_kwh = 1000.0;
  e.p_ch_max_kw = 500.0;
  e.p_dis_max_kw = 500.0;
  e.e_min_kwh = 200.0;
  e.e_max_kwh = 800.0;
  return e;
}

}  // namespace

std::vector<double> regd_signal(const TimeGrid& grid, std::uint64_t seed) {
  const int n = grid.horizon_steps * grid.substeps_per_step();
  const double period_s = 600.0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.1);
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) {
    const double phase = std::fmod(k * grid.rt_step_seconds, period_s) /
                         period_s;
    // 0 -> 1 -> -1 -> 0 over one period.
    const double tri = phase < 0.25   ? 4.0 * phase
                       : phase < 0.75 ? 2.0 - 4.0 * phase
                                      : 4.0 * phase - 4.0;
    out[k] = std::clamp(0.6 * tri + noise(rng), -1.0, 1.0);
  }
  return out;
}

CommunityConfig bundled_config() {
  CommunityConfig cfg;
  cfg.time = TimeGrid{};

  BuildingConfig office;
  office.id = "office";
  office.kind = BuildingKind::kOffice;
  office.zones = {zone("open_plan", 100.0, 96.0)};
  office.ess = battery();
  office.pv = {4000.0, 0.9};
  office.demand_load = profile(600.0, 1900.0, 8.0, 19.0);
  office.demand_ev = profile(0.0, 200.0, 8.0, 13.0);

  BuildingConfig research;
  research.id = "research";
  research.kind = BuildingKind::kResearch;
  research.zones = {zone("labs", 150.0, 144.0)};
  research.ess = battery();
  research.pv = {4000.0, 0.9};
  research.demand_load = profile(2800.0, 700.0, 9.0, 18.0);
  research.demand_ev = profile(0.0, 100.0, 10.0, 16.0);

  BuildingConfig home;
  home.id = "residential";
  home.kind = BuildingKind::kResidential;
  home.zones = {zone("apartments", 50.0, 48.0)};
  home.ess = battery();
  home.pv = {2000.0, 0.9};
  home.demand_load = profile(300.0, 300.0, 6.0, 9.0);
  for (int t = 0; t < kSteps; ++t) home.demand_load[t] += 500.0 * bump(t, 17.0, 23.0);
  home.demand_ev = profile(0.0, 150.0, 18.0, 24.0);

  cfg.buildings = {office, research, home};

  for (int t = 0; t < kSteps; ++t) {
    const double im = (t >= 11 && t < 17)  ? 0.22
                      : (t >= 8 && t < 22) ? 0.14
                                           : 0.08;
    cfg.prices.lambda_import.push_back(im);
    cfg.prices.lambda_export.push_back(0.05);
    cfg.exogenous.t_out.push_back(
        28.5 - 4.5 * std::cos(2.0 * M_PI * (t - 15) / 24.0));
    cfg.exogenous.clear_sky_irr.push_back(900.0 * bump(t, 6.0, 20.0));
  }
  cfg.prices.lambda_comfort = 200.0;
  cfg.prices.lambda_ffr = 0.02;

  cfg.exogenous.reg_signal = regd_signal(cfg.time, kSignalSeed);
  scenario::CovModel cov;
  cov.seed = kTruthSeed;
  cfg.exogenous.truth_irradiance =
      scenario::generate_day_ahead(cfg.exogenous, cov, 1).irradiance[0];
  return cfg;
}

}  // namespace cems::io
