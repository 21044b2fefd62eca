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

// Semantic types shared by every layer of the energy management stack, plus
// the physical primitives (PV output, comfort curve) and config validation.
//
// Units are fixed community-wide: kW, kWh, degrees C, hours. Prices are in
// abstract cost units.

#ifndef CEMS_DOMAIN_HPP_
#define CEMS_DOMAIN_HPP_

#include <optional>
#include <string>
#include <vector>

namespace cems {

struct TimeGrid {
  double step_hours = 1.0;
  int horizon_steps = 24;
  int rt_step_seconds = 2;
  int smpc_horizon_N = 24;

  // Number of real-time substeps inside one planning step.
  int substeps_per_step() const;

  bool operator==(const TimeGrid&) const = default;
};

struct PvParams {
  static constexpr double kReferenceIrradiance = 1000.0;  // W/m^2
  double p_max_kw = 0.0;
  double efficiency = 1.0;

  bool operator==(const PvParams&) const = default;
};

// sigma(T) = a T^2 + b T + c. Defaults are the published discomfort fit.
struct ComfortCoeffs {
  double a = 0.01087;
  double b = -0.5541;
  double c = 6.8587;

  bool operator==(const ComfortCoeffs&) const = default;
};

struct HvacZoneParams {
  std::string name;
  double heat_capacity = 0.0;       // kWh/degC
  double thermal_resistance = 0.0;  // degC/kW
  double cop = 1.0;
  double p_h_max_kw = 0.0;
  double temp_min_c = 18.0;
  double temp_max_c = 26.0;
  double t_in_init_c = 24.0;
  ComfortCoeffs comfort;

  bool operator==(const HvacZoneParams&) const = default;
};

struct EssParams {
  double capacity_kwh = 0.0;
  double eta_ch = 0.9;
  double eta_dis = 0.8;
  double p_ch_max_kw = 0.0;
  double p_dis_max_kw = 0.0;
  double p_ch_min_kw = 0.0;
  double p_dis_min_kw = 0.0;
  double soc_min_frac = 0.2;
  double soc_max_frac = 0.8;
  double soc_boundary_frac = 0.5;
  double e_min_kwh = 0.0;  // reserve headroom floor
  double e_max_kwh = 0.0;  // reserve headroom ceiling

  double soc_min_kwh() const { return soc_min_frac * capacity_kwh; }
  double soc_max_kwh() const { return soc_max_frac * capacity_kwh; }
  double soc_boundary_kwh() const { return soc_boundary_frac * capacity_kwh; }

  bool operator==(const EssParams&) const = default;
};

enum class BuildingKind { kOffice, kResearch, kResidential };

const char* to_string(BuildingKind kind);
std::optional<BuildingKind> parse_building_kind(const std::string& name);

struct BuildingConfig {
  std::string id;
  BuildingKind kind = BuildingKind::kOffice;
  std::vector<HvacZoneParams> zones;
  EssParams ess;
  PvParams pv;
  std::vector<double> demand_load;  // kW per step
  std::vector<double> demand_ev;    // kW per step

  bool operator==(const BuildingConfig&) const = default;
};

struct PriceSchedule {
  std::vector<double> lambda_import;  // per kWh
  std::vector<double> lambda_export;  // per kWh
  double lambda_comfort = 0.0;        // per discomfort unit and step
  double lambda_ffr = 0.0;            // per kW of committed reserve and step

  bool operator==(const PriceSchedule&) const = default;
};

struct ExogenousData {
  std::vector<double> t_out;          // degC per step
  std::vector<double> clear_sky_irr;  // W/m^2 per step
  // Regulation signal in [-1, 1] at rt_step_seconds resolution. Empty means
  // no regulation requests for the whole day.
  std::vector<double> reg_signal;
  // Realized irradiance used by the plant. Empty means "draw from the
  // scenario model".
  std::vector<double> truth_irradiance;

  bool operator==(const ExogenousData&) const = default;
};

struct CommunityConfig {
  TimeGrid time;
  std::vector<BuildingConfig> buildings;
  PriceSchedule prices;
  ExogenousData exogenous;
  int comfort_cuts = 16;

  double max_import_price() const;

  bool operator==(const CommunityConfig&) const = default;
};

struct Violation {
  std::string path;
  std::string message;

  bool operator==(const Violation&) const = default;
};

// Returns every invariant violation; empty means the config admits a
// well-posed optimization. Never throws.
std::vector<Violation> validate_config(const CommunityConfig& cfg);

// MPPT output: p_max * (G / 1000) * efficiency. Throws InputError for G < 0.
double pv_output(const PvParams& pv, double irradiance_wm2);

double comfort_sigma(const ComfortCoeffs& coeffs, double t_in_c);

// One-step ETP update for a cooling-only zone:
//   t' = (1 - dt/(CR)) t + dt/(CR) T_out - (dt/C) cop p
double etp_step(const HvacZoneParams& zone, double step_hours, double t_in_c,
                double t_out_c, double p_h_kw);

// Temperature drop per kW of HVAC power over one step, dt * cop / C.
double etp_power_gain(const HvacZoneParams& zone, double step_hours);

}  // namespace cems

#endif  // CEMS_DOMAIN_HPP_
