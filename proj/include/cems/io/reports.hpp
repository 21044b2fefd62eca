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

// Files a run leaves behind: the long-format trace, the commitment and plan
// tables, summary.json, run comparisons and the plot-ready figure tables.

#ifndef CEMS_IO_REPORTS_HPP_
#define CEMS_IO_REPORTS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "cems/control/control.hpp"

namespace cems::io {

// step,substep,building,zone,field,value; -1 marks "not applicable".
std::string write_trace_csv(const std::vector<control::TraceRow>& rows);
std::vector<control::TraceRow> read_trace_csv(std::string_view text,
                                              const std::string& source);

// t,b,i,r_up,r_dn,r_e_up,r_e_dn,r_h_up,r_h_dn, one row per zone and step.
std::string write_commitment_csv(const model::FfrCommitment& c);
model::FfrCommitment read_commitment_csv(std::string_view text,
                                         const std::string& source);

// name,role,t,b,i,value for every column of the day-ahead schedule(s).
std::string write_plan_csv(const control::DayAheadPlan& plan);

std::string write_summary_json(const control::Summary& s);
control::Summary read_summary_json(std::string_view text,
                                   const std::string& source);

struct Delta {
  std::string metric;
  double a = 0.0, b = 0.0;
  double percent = 0.0;  // (a - b) / |b| * 100; 0 when both are 0
};
// Relative change of run a against run b. Throws InputError when the runs
// do not describe the same day (horizon or net-demand length differ).
std::vector<Delta> compare_summaries(const control::Summary& a,
                                     const control::Summary& b);
std::string write_comparison_csv(const std::vector<Delta>& deltas);

struct FigureTable {
  std::string file_name;
  std::string csv;
};
// fig3a_net_demand, fig3b_ffr_capacity, fig4_ess, fig5_hvac and
// fig6_smpc_levels, computed from trace rows alone.
std::vector<FigureTable> figure_tables(
    const std::vector<control::TraceRow>& rows, int horizon);

}  // namespace cems::io

#endif  // CEMS_IO_REPORTS_HPP_
