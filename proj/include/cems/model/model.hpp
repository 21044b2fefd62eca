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

// Day-ahead (Level 1) and rolling-window stochastic (Level 2) community
// models, plus schedule extraction and row-family auditing.

#ifndef CEMS_MODEL_MODEL_HPP_
#define CEMS_MODEL_MODEL_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cems/domain.hpp"
#include "cems/lp/linear_program.hpp"
#include "cems/lp/simplex.hpp"
#include "cems/model/var_map.hpp"
#include "cems/scenario/scenario.hpp"

namespace cems::model {

struct Tangent {
  double slope = 0.0;
  double intercept = 0.0;
  double touch = 0.0;  // temperature where the line touches the quadratic
};

struct ComfortCuts {
  std::vector<Tangent> tangents;

  int num_cuts() const { return static_cast<int>(tangents.size()); }
  // Max over the tangent lines; never above the quadratic.
  double envelope(double t_in_c) const;
};

// K tangents at equally spaced points of [temp_min, temp_max]. K < 2 is an
// InputError.
ComfortCuts add_comfort_cuts(const HvacZoneParams& zone, int num_cuts);

// Committed reserve per step. ESS parts are per building, HVAC and totals
// per zone.
struct FfrCommitment {
  std::vector<std::vector<double>> r_e_up, r_e_dn;  // [t][b]
  std::vector<std::vector<std::vector<double>>> r_h_up, r_h_dn;  // [t][b][i]
  std::vector<std::vector<std::vector<double>>> r_up, r_dn;      // [t][b][i]

  int horizon() const { return static_cast<int>(r_up.size()); }
  // Sum of r_up + r_dn over all entries, kW x steps.
  double total() const;
};

struct Mode {
  enum class Kind { kCems, kBems };
  Kind kind = Kind::kCems;
  int building = -1;  // only for kBems

  static Mode cems() { return {}; }
  static Mode bems(int b) { return {Kind::kBems, b}; }
  bool includes(int b) const { return kind == Kind::kCems || b == building; }
};

// A built instance plus the metadata needed to interpret its columns.
struct BuiltModel {
  lp::MilpProblem problem;
  VarMap vars;
  Mode mode;
  int t_begin = 0;
  int t_end = 0;  // exclusive; states are indexed up to t_end
  int num_scenarios = 1;
  std::vector<double> weights;
  std::string dump_name;  // "level1_k0" style key for debug dumps
};

BuiltModel build_level1(const CommunityConfig& cfg,
                        const std::vector<double>& pv_irradiance, Mode mode);

struct PlantSnapshot {
  std::vector<double> soc_kwh;               // [b]
  std::vector<std::vector<double>> t_in_c;   // [b][i]
};

// Window [k, min(k + N, T)). The commitment is fixed through column bounds.
BuiltModel build_level2(const CommunityConfig& cfg,
                        const scenario::ScenarioSet& scenarios, int k, int N,
                        const FfrCommitment& commitment,
                        const PlantSnapshot& state, Mode mode);

class Schedule {
 public:
  Schedule() = default;
  Schedule(const BuiltModel& model, const lp::Solution& sol);

  std::optional<double> value(const VarKey& key) const;
  std::optional<double> value(Role role, int t, int b, int i = -1,
                              int s = -1) const;
  // Throws StateError when the column does not exist.
  double at(Role role, int t, int b, int i = -1, int s = -1) const;
  // Values over every t present for (role, b, i, s) in increasing t;
  // nullopt when the model has no such column at all.
  std::optional<std::vector<double>> series(Role role, int b, int i = -1,
                                            int s = -1) const;
  double slack_total() const;
  const std::map<VarKey, double>& values() const { return values_; }

  double objective = 0.0;
  int t_begin = 0;
  int t_end = 0;

 private:
  std::map<VarKey, double> values_;
};

// Binaries are rounded to {0, 1}. Throws StateError unless optimal.
Schedule extract_schedule(const lp::Solution& sol, const BuiltModel& model);

// Row family ("balance", "ess_dyn", "comfort_cut", ...) of a row name.
std::string row_family(const std::string& row_name);

struct FamilyReport {
  std::string family;
  int violated_rows = 0;
  double max_violation = 0.0;
  std::string worst_row;
};

// Rows and bounds violated by more than tol, grouped by equation family.
// Bound violations are reported as "bounds:<role>".
std::vector<FamilyReport> audit_point(const BuiltModel& model,
                                      const std::vector<double>& x,
                                      double tol);

std::string format_attribution(const std::vector<FamilyReport>& reports);

// Solver settings used for every model solve.
lp::FeasTolerances model_tolerances();

// Solves with branch and bound. Throws InfeasibleError carrying the family
// attribution at the phase-1 point.
lp::Solution solve_model(const BuiltModel& model);

}  // namespace cems::model

#endif  // CEMS_MODEL_MODEL_HPP_
