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

// Weighted PV irradiance scenarios: day-ahead generation from a truncated
// Gaussian with exponential temporal correlation, and hourly re-sampling
// conditioned on the last observed deviation from clear sky.

#ifndef CEMS_SCENARIO_SCENARIO_HPP_
#define CEMS_SCENARIO_SCENARIO_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cems/domain.hpp"

namespace cems::scenario {

struct ScenarioSet {
  std::vector<std::vector<double>> irradiance;  // [s][t], W/m^2
  std::vector<double> weights;                  // [s]
  std::vector<double> clear_sky;                // [t]
  int anchor_step = 0;
  // Expected irradiance per step before clipping. Observed values on steps
  // before anchor_step.
  std::vector<double> conditional_mean;

  int num_scenarios() const { return static_cast<int>(weights.size()); }
  int horizon() const { return static_cast<int>(clear_sky.size()); }
};

struct CovModel {
  double marginal_std = 0.15;      // fraction of clear sky
  double corr_length_hours = 2.0;
  std::uint64_t seed = 0;
};

// One-step AR(1) coefficient exp(-dt / L).
double step_correlation(const CovModel& cov, double step_hours);

// S trajectories G = clip(cs (1 + eps), 0, cs) with eps ~ N(0, Sigma),
// Sigma_ij = std^2 exp(-|i-j| dt / L); uniform weights.
ScenarioSet generate_day_ahead(const ExogenousData& exo, const CovModel& cov,
                               int num_scenarios, double step_hours = 1.0);

// Index of the most probable scenario: largest weight, then closest to the
// weighted mean, then lowest index.
int most_probable_index(const ScenarioSet& set);
std::vector<double> most_probable(const ScenarioSet& set);

// Replaces steps < k by `observed` (at least k values) and re-draws the
// future conditioned on the deviation at k-1. k == 0 reproduces
// generate_day_ahead for the same seed.
ScenarioSet update_hourly(const ScenarioSet& set, const CovModel& cov, int k,
                          const std::vector<double>& observed,
                          double step_hours = 1.0);

// Long-format "t,s,irradiance_wm2" text.
std::string write_scenarios_csv(const ScenarioSet& set);
// Weights are uniform. Throws InputError on malformed rows, gaps, or values
// outside [0, clear_sky].
ScenarioSet read_scenarios_csv(std::string_view text,
                               const std::vector<double>& clear_sky);

}  // namespace cems::scenario

#endif  // CEMS_SCENARIO_SCENARIO_HPP_
