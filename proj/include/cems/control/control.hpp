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

// The three-level hierarchy over one simulated day: day-ahead reserve
// commitment, hourly stochastic re-scheduling, 2 s reserve deployment and
// the ground-truth plant.

#ifndef CEMS_CONTROL_CONTROL_HPP_
#define CEMS_CONTROL_CONTROL_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cems/domain.hpp"
#include "cems/model/model.hpp"
#include "cems/scenario/scenario.hpp"

namespace cems::control {

using model::FfrCommitment;
using model::Mode;

struct DayAheadPlan {
  // One schedule in CEMS mode, one per building in BEMS mode.
  std::vector<model::Schedule> parts;
  FfrCommitment commitment;
  double objective_value = 0.0;
  Mode mode;
  std::vector<double> pv_irradiance;  // the scenario the plan was built on

  // Looks the value up in the part that owns building b.
  double at(model::Role role, int t, int b, int i = -1) const;
};

DayAheadPlan run_level1(const CommunityConfig& cfg,
                        const scenario::ScenarioSet& scenarios,
                        Mode mode = Mode::cems());

struct PlantState {
  std::vector<double> soc_kwh;              // [b]
  std::vector<std::vector<double>> t_in_c;  // [b][i]
  int step = 0;

  static PlantState initial(const CommunityConfig& cfg);
  model::PlantSnapshot snapshot() const { return {soc_kwh, t_in_c}; }
};

// First-step decisions of one building.
struct BuildingSlice {
  double p_ch = 0.0, p_dis = 0.0;
  double r_e_up = 0.0, r_e_dn = 0.0;
  double r_ch_up = 0.0, r_ch_dn = 0.0, r_dis_up = 0.0, r_dis_dn = 0.0;
  std::vector<double> p_h, r_h_up, r_h_dn;  // [i]
  std::vector<double> r_up, r_dn;           // [i], committed totals
};

struct Level2Result {
  int k = 0;
  int window_end = 0;
  std::vector<BuildingSlice> slice;  // [b]
  double objective = 0.0;
  double slack_total = 0.0;
  std::vector<std::string> warnings;
  // Expected billing term of each scenario over the window.
  std::vector<double> scenario_energy_cost;
  // Planned end-of-step state.
  std::vector<double> soc_next;
  std::vector<std::vector<double>> t_in_next;
};

Level2Result run_level2_step(const CommunityConfig& cfg, int k,
                             const DayAheadPlan& plan,
                             const scenario::ScenarioSet& scenarios,
                             const PlantState& plant);

// Level-3 controls for every substep of one planning step.
struct Level3Result {
  int substeps = 0;
  std::vector<double> w;                                  // [n]
  std::vector<std::vector<double>> p_ch, p_dis;           // [n][b]
  std::vector<std::vector<std::vector<double>>> p_h;      // [n][b][i]
  // Reserve actually delivered per zone, kW.
  std::vector<std::vector<std::vector<double>>> deployed_up, deployed_dn;
  int saturation_events = 0;
};

// Signed deployment: w > 0 calls up reserve (less consumption), w < 0 down
// reserve; each device moves by |w| times its committed share. Throws
// InputError when |w| > 1.
Level3Result run_level3(const CommunityConfig& cfg,
                        const std::vector<BuildingSlice>& slice,
                        const std::vector<double>& reg);

struct PlantStepOutcome {
  PlantState next;
  double energy_cost = 0.0;
  double import_kwh = 0.0;  // metered at the billing point(s)
  double export_kwh = 0.0;
  std::vector<double> building_import_kwh, building_export_kwh;  // [b]
  std::vector<double> soc_min, soc_max;                          // [b]
  std::vector<std::vector<double>> p_h_mean;                     // [b][i]
  int clip_events = 0;
  std::vector<std::string> log;
};

// Integrates one planning step: SoC per substep with the charge and
// discharge efficiencies (clipped to [0, E] and logged), zone temperature by
// the ETP recursion with the step-average HVAC power, grid billing per
// substep (community meter in CEMS mode, building meters in BEMS mode).
PlantStepOutcome plant_step(const CommunityConfig& cfg, const PlantState& state,
                            const Level3Result& u, double irradiance_wm2,
                            Mode mode);

struct SimOptions {
  std::uint64_t seed = 0;
  Mode mode;
  int num_scenarios = 10;
  scenario::CovModel cov;  // seed is overridden by `seed`
};

struct TraceRow {
  int step = 0;
  int substep = -1;  // -1 for per-step records
  int building = -1;
  int zone = -1;
  std::string field;
  double value = 0.0;

  bool operator==(const TraceRow&) const = default;
};

struct HourRecord {
  int step = 0;
  Level2Result level2;
  std::vector<double> pv_kw;                   // realized [b]
  std::vector<double> soc_start;               // [b]
  std::vector<std::vector<double>> t_in_start; // [b][i]
  double energy_cost = 0.0;
  double comfort_cost = 0.0;  // priced on the cut envelope
  double comfort_exact = 0.0; // exact quadratic, for reporting
  double ffr_revenue = 0.0;
  double import_kwh = 0.0;
  double export_kwh = 0.0;
  double ffr_committed_kwh = 0.0;
  double ffr_deployed_kwh = 0.0;
  int honor_violations = 0;
  int soc_violations = 0;
  int clip_events = 0;
  int saturation_events = 0;
};

struct ClosedLoopTrace {
  Mode mode;
  int horizon = 0;
  double step_hours = 1.0;
  double level1_objective = 0.0;
  FfrCommitment commitment;
  std::vector<HourRecord> hours;
  PlantState final_state;
  int temp_violations = 0;  // zone temperatures outside bounds at any step
  std::vector<TraceRow> rows;
  std::vector<std::string> warnings;
};

ClosedLoopTrace simulate_day(const CommunityConfig& cfg,
                             const SimOptions& options);

// Same loop with a caller-supplied day-ahead set and realized irradiance.
ClosedLoopTrace simulate_day(const CommunityConfig& cfg,
                             const SimOptions& options,
                             const scenario::ScenarioSet& day_ahead,
                             const std::vector<double>& truth);

struct Summary {
  std::string mode;
  int horizon = 0;
  double total_cost = 0.0;
  double energy_cost = 0.0;
  double comfort_cost = 0.0;
  double ffr_revenue = 0.0;
  double level1_objective = 0.0;
  double ffr_committed_kwh = 0.0;
  double ffr_deployed_kwh = 0.0;
  double comfort_integral = 0.0;
  double grid_import_kwh = 0.0;
  double grid_export_kwh = 0.0;
  double cumulative_net_demand_kwh = 0.0;
  std::vector<double> net_demand_kwh;  // per step, import - export
  int temp_excursions = 0;
  int soc_violations = 0;
  int honor_violations = 0;
  int clip_events = 0;
  int saturation_events = 0;
  double slack_total = 0.0;
};

// Throws InputError when the trace does not cover the whole horizon.
Summary compute_metrics(const ClosedLoopTrace& trace);

}  // namespace cems::control

#endif  // CEMS_CONTROL_CONTROL_HPP_
