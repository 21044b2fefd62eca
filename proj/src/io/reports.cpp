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

#include "cems/io/reports.hpp"

#include <cmath>
#include <json.hpp>
#include <map>
#include <tuple>

#include "cems/error.hpp"
#include "cems/format.hpp"
#include "cems/io/csv.hpp"

namespace cems::io {
namespace {

using control::Summary;
using control::TraceRow;
using nlohmann::json;

std::string f(double v) { return format_double(v); }

template <typename T>
void grow(std::vector<T>& v, std::size_t n) {
  if (v.size() < n) v.resize(n);
}

}  // namespace

std::string write_trace_csv(const std::vector<TraceRow>& rows) {
  std::string out = "step,substep,building,zone,field,value\n";
  out.reserve(rows.size() * 32);
  for (const TraceRow& r : rows) {
    out += std::to_string(r.step);
    out += ',';
    out += std::to_string(r.substep);
    out += ',';
    out += std::to_string(r.building);
    out += ',';
    out += std::to_string(r.zone);
    out += ',';
    out += r.field;
    out += ',';
    out += f(r.value);
    out += '\n';
  }
  return out;
}

std::vector<TraceRow> read_trace_csv(std::string_view text,
                                     const std::string& source) {
  CsvTable t = parse_csv(text, source);
  const int cs = t.column("step"), cn = t.column("substep"),
            cb = t.column("building"), cz = t.column("zone"),
            cf = t.column("field"), cv = t.column("value");
  std::vector<TraceRow> out;
  out.reserve(t.rows.size());
  for (int r = 0; r < static_cast<int>(t.rows.size()); ++r) {
    out.push_back({t.integer(r, cs), t.integer(r, cn), t.integer(r, cb),
                   t.integer(r, cz), t.rows[r][cf], t.number(r, cv)});
  }
  return out;
}

std::string write_commitment_csv(const model::FfrCommitment& c) {
  std::string out = "t,b,i,r_up,r_dn,r_e_up,r_e_dn,r_h_up,r_h_dn\n";
  for (int t = 0; t < c.horizon(); ++t) {
    for (std::size_t b = 0; b < c.r_up[t].size(); ++b) {
      for (std::size_t i = 0; i < c.r_up[t][b].size(); ++i) {
        out += std::to_string(t) + "," + std::to_string(b) + "," +
               std::to_string(i) + "," + f(c.r_up[t][b][i]) + "," +
               f(c.r_dn[t][b][i]) + "," + f(c.r_e_up[t][b]) + "," +
               f(c.r_e_dn[t][b]) + "," + f(c.r_h_up[t][b][i]) + "," +
               f(c.r_h_dn[t][b][i]) + "\n";
      }
    }
  }
  return out;
}

model::FfrCommitment read_commitment_csv(std::string_view text,
                                         const std::string& source) {
  CsvTable tab = parse_csv(text, source);
  const int ct = tab.column("t"), cb = tab.column("b"), ci = tab.column("i");
  const int cols[6] = {tab.column("r_up"),   tab.column("r_dn"),
                       tab.column("r_e_up"), tab.column("r_e_dn"),
                       tab.column("r_h_up"), tab.column("r_h_dn")};
  model::FfrCommitment c;
  for (int r = 0; r < static_cast<int>(tab.rows.size()); ++r) {
    const int t = tab.integer(r, ct), b = tab.integer(r, cb),
              i = tab.integer(r, ci);
    if (t < 0 || b < 0 || i < 0) {
      throw InputError(source + ":" + std::to_string(tab.line[r]) +
                       ": negative index");
    }
    const auto ut = static_cast<std::size_t>(t) + 1;
    const auto ub = static_cast<std::size_t>(b) + 1;
    const auto ui = static_cast<std::size_t>(i) + 1;
    for (auto* v : {&c.r_e_up, &c.r_e_dn}) {
      grow(*v, ut);
      grow((*v)[t], ub);
    }
    for (auto* v : {&c.r_up, &c.r_dn, &c.r_h_up, &c.r_h_dn}) {
      grow(*v, ut);
      grow((*v)[t], ub);
      grow((*v)[t][b], ui);
    }
    c.r_up[t][b][i] = tab.number(r, cols[0]);
    c.r_dn[t][b][i] = tab.number(r, cols[1]);
    c.r_e_up[t][b] = tab.number(r, cols[2]);
    c.r_e_dn[t][b] = tab.number(r, cols[3]);
    c.r_h_up[t][b][i] = tab.number(r, cols[4]);
    c.r_h_dn[t][b][i] = tab.number(r, cols[5]);
  }
  return c;
}

std::string write_plan_csv(const control::DayAheadPlan& plan) {
  std::string out = "name,role,t,b,i,value\n";
  for (const model::Schedule& part : plan.parts) {
    for (const auto& [key, v] : part.values()) {
      out += model::var_name(key) + "," + model::to_string(key.role) + "," +
             std::to_string(key.t) + "," + std::to_string(key.b) + "," +
             std::to_string(key.i) + "," + f(v) + "\n";
    }
  }
  return out;
}

namespace {

// Field order of summary.json; also the comparison's metric list.
struct SummaryField {
  const char* name;
  double Summary::*member;
};
constexpr SummaryField kDoubles[] = {
    {"total_cost", &Summary::total_cost},
    {"energy_cost", &Summary::energy_cost},
    {"comfort_cost", &Summary::comfort_cost},
    {"ffr_revenue", &Summary::ffr_revenue},
    {"level1_objective", &Summary::level1_objective},
    {"ffr_committed_kwh", &Summary::ffr_committed_kwh},
    {"ffr_deployed_kwh", &Summary::ffr_deployed_kwh},
    {"comfort_integral", &Summary::comfort_integral},
    {"grid_import_kwh", &Summary::grid_import_kwh},
    {"grid_export_kwh", &Summary::grid_export_kwh},
    {"cumulative_net_demand_kwh", &Summary::cumulative_net_demand_kwh},
    {"slack_total", &Summary::slack_total},
};
struct CountField {
  const char* name;
  int Summary::*member;
};
constexpr CountField kCounts[] = {
    {"temp_excursions", &Summary::temp_excursions},
    {"soc_violations", &Summary::soc_violations},
    {"honor_violations", &Summary::honor_violations},
    {"clip_events", &Summary::clip_events},
    {"saturation_events", &Summary::saturation_events},
};

}  // namespace

std::string write_summary_json(const Summary& s) {
  json doc = json::object();
  doc["mode"] = s.mode;
  doc["horizon"] = s.horizon;
  for (const auto& fd : kDoubles) doc[fd.name] = s.*fd.member;
  for (const auto& fd : kCounts) doc[fd.name] = s.*fd.member;
  doc["net_demand_kwh"] = s.net_demand_kwh;
  return doc.dump(2) + "\n";
}

Summary read_summary_json(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error&) {
    throw InputError(source + ": invalid JSON");
  }
  auto need = [&](const char* key) -> const json& {
    if (!doc.is_object() || !doc.contains(key)) {
      throw InputError(source + ": summary has no field '" + key + "'");
    }
    return doc.at(key);
  };
  Summary s;
  try {
    s.mode = need("mode").get<std::string>();
    s.horizon = need("horizon").get<int>();
    for (const auto& fd : kDoubles) s.*fd.member = need(fd.name).get<double>();
    for (const auto& fd : kCounts) s.*fd.member = need(fd.name).get<int>();
    s.net_demand_kwh = need("net_demand_kwh").get<std::vector<double>>();
  } catch (const json::type_error&) {
    throw InputError(source + ": summary field has the wrong type");
  }
  return s;
}

std::vector<Delta> compare_summaries(const Summary& a, const Summary& b) {
  if (a.horizon != b.horizon ||
      a.net_demand_kwh.size() != b.net_demand_kwh.size()) {
    throw InputError("summaries describe different horizons (" +
                     std::to_string(a.horizon) + " vs " +
                     std::to_string(b.horizon) + " steps)");
  }
  std::vector<Delta> out;
  auto add = [&](const char* name, double va, double vb) {
    Delta d{name, va, vb, 0.0};
    if (vb != 0.0) {
      d.percent = (va - vb) / std::abs(vb) * 100.0;
    } else if (va != 0.0) {
      d.percent = va > 0 ? HUGE_VAL : -HUGE_VAL;
    }
    out.push_back(d);
  };
  add("total_cost", a.total_cost, b.total_cost);
  add("energy_cost", a.energy_cost, b.energy_cost);
  add("ffr_committed_kwh", a.ffr_committed_kwh, b.ffr_committed_kwh);
  add("ffr_deployed_kwh", a.ffr_deployed_kwh, b.ffr_deployed_kwh);
  add("comfort_integral", a.comfort_integral, b.comfort_integral);
  add("cumulative_net_demand_kwh", a.cumulative_net_demand_kwh,
      b.cumulative_net_demand_kwh);
  add("grid_import_kwh", a.grid_import_kwh, b.grid_import_kwh);
  return out;
}

std::string write_comparison_csv(const std::vector<Delta>& deltas) {
  std::string out = "metric,a,b,delta_percent\n";
  for (const Delta& d : deltas) {
    out += d.metric + "," + f(d.a) + "," + f(d.b) + "," + f(d.percent) + "\n";
  }
  return out;
}

namespace {

// (step, building, zone) -> field -> value for per-step records, plus the
// per-step means of the substep records.
class StepView {
 public:
  StepView(const std::vector<TraceRow>& rows, int horizon) : horizon_(horizon) {
    std::map<int, int> substeps;
    for (const TraceRow& r : rows) {
      if (r.substep < 0) {
        step_[{r.step, r.building, r.zone}][r.field] = r.value;
        if (r.building >= 0) nb_ = std::max(nb_, r.building + 1);
        if (r.building >= 0 && r.zone >= 0) {
          grow(nz_, static_cast<std::size_t>(r.building) + 1);
          nz_[r.building] = std::max(nz_[r.building], r.zone + 1);
        }
      } else {
        sub_[{r.step, r.building, r.zone}][r.field] += r.value;
        substeps[r.step] = std::max(substeps[r.step], r.substep + 1);
      }
    }
    for (auto& [key, fields] : sub_) {
      const int n = substeps[std::get<0>(key)];
      for (auto& [name, v] : fields) v /= n;
    }
    grow(nz_, static_cast<std::size_t>(nb_));
  }

  double at(int t, int b, int i, const std::string& field) const {
    return lookup(step_, t, b, i, field);
  }
  double mean(int t, int b, int i, const std::string& field) const {
    return lookup(sub_, t, b, i, field);
  }
  int horizon() const { return horizon_; }
  int buildings() const { return nb_; }
  int zones(int b) const { return nz_[b]; }

 private:
  using Key = std::tuple<int, int, int>;
  using Table = std::map<Key, std::map<std::string, double>>;
  static double lookup(const Table& tab, int t, int b, int i,
                       const std::string& field) {
    auto it = tab.find({t, b, i});
    if (it != tab.end()) {
      auto jt = it->second.find(field);
      if (jt != it->second.end()) return jt->second;
    }
    throw InputError("trace has no '" + field + "' at step " +
                     std::to_string(t) + ", building " + std::to_string(b) +
                     ", zone " + std::to_string(i));
  }

  int horizon_;
  int nb_ = 0;
  std::vector<int> nz_;
  Table step_, sub_;
};

}  // namespace

std::vector<FigureTable> figure_tables(const std::vector<TraceRow>& rows,
                                       int horizon) {
  const StepView v(rows, horizon);
  const int T = horizon, nb = v.buildings();
  std::vector<FigureTable> out;

  std::string a = "t,net_demand_kwh,cumulative_net_demand_kwh\n";
  double cum = 0.0;
  for (int t = 0; t < T; ++t) {
    const double net = v.at(t, -1, -1, "grid_import_kwh") -
                       v.at(t, -1, -1, "grid_export_kwh");
    cum += net;
    a += std::to_string(t) + "," + f(net) + "," + f(cum) + "\n";
  }
  out.push_back({"fig3a_net_demand.csv", a});

  std::string bcsv =
      "t,r_up_kw,r_dn_kw,ess_up_kw,ess_dn_kw,hvac_up_kw,hvac_dn_kw\n";
  for (int t = 0; t < T; ++t) {
    double up = 0, dn = 0, eu = 0, ed = 0, hu = 0, hd = 0;
    for (int b = 0; b < nb; ++b) {
      eu += v.at(t, b, -1, "r_e_up_kw");
      ed += v.at(t, b, -1, "r_e_dn_kw");
      for (int i = 0; i < v.zones(b); ++i) {
        up += v.at(t, b, i, "r_up_kw");
        dn += v.at(t, b, i, "r_dn_kw");
        hu += v.at(t, b, i, "r_h_up_kw");
        hd += v.at(t, b, i, "r_h_dn_kw");
      }
    }
    bcsv += std::to_string(t) + "," + f(up) + "," + f(dn) + "," + f(eu) +
            "," + f(ed) + "," + f(hu) + "," + f(hd) + "\n";
  }
  out.push_back({"fig3b_ffr_capacity.csv", bcsv});

  std::string e =
      "t,b,soc_kwh,p_ch_kw,p_dis_kw,l1_p_ch_kw,l1_p_dis_kw,r_e_up_kw,"
      "r_e_dn_kw,l3_p_ess_kw\n";
  for (int t = 0; t < T; ++t) {
    for (int b = 0; b < nb; ++b) {
      e += std::to_string(t) + "," + std::to_string(b) + "," +
           f(v.at(t, b, -1, "soc_kwh")) + "," + f(v.at(t, b, -1, "p_ch_kw")) +
           "," + f(v.at(t, b, -1, "p_dis_kw")) + "," +
           f(v.at(t, b, -1, "l1_p_ch_kw")) + "," +
           f(v.at(t, b, -1, "l1_p_dis_kw")) + "," +
           f(v.at(t, b, -1, "r_e_up_kw")) + "," +
           f(v.at(t, b, -1, "r_e_dn_kw")) + "," +
           f(v.mean(t, b, -1, "p_ess_kw")) + "\n";
    }
  }
  out.push_back({"fig4_ess.csv", e});

  std::string h =
      "t,b,i,t_in_c,sigma,l1_p_h_kw,p_h_kw,l3_p_h_kw,r_h_up_kw,r_h_dn_kw\n";
  for (int t = 0; t < T; ++t) {
    for (int b = 0; b < nb; ++b) {
      for (int i = 0; i < v.zones(b); ++i) {
        h += std::to_string(t) + "," + std::to_string(b) + "," +
             std::to_string(i) + "," + f(v.at(t, b, i, "t_in_c")) + "," +
             f(v.at(t, b, i, "sigma")) + "," + f(v.at(t, b, i, "l1_p_h_kw")) +
             "," + f(v.at(t, b, i, "p_h_kw")) + "," +
             f(v.at(t, b, i, "l3_p_h_kw")) + "," +
             f(v.at(t, b, i, "r_h_up_kw")) + "," +
             f(v.at(t, b, i, "r_h_dn_kw")) + "\n";
      }
    }
  }
  out.push_back({"fig5_hvac.csv", h});

  // Community device load at each level: day-ahead plan, hourly SMPC first
  // step, and the mean of the 2 s dispatch, with the deployed reserve.
  std::string s =
      "t,level1_r_up_kw,level1_r_dn_kw,level1_load_kw,level2_load_kw,"
      "level3_load_kw,level3_up_kw,level3_dn_kw\n";
  for (int t = 0; t < T; ++t) {
    double up = 0, dn = 0, l1 = 0, l2 = 0, l3 = 0, du = 0, dd = 0;
    for (int b = 0; b < nb; ++b) {
      l1 += v.at(t, b, -1, "l1_p_ch_kw") - v.at(t, b, -1, "l1_p_dis_kw");
      l2 += v.at(t, b, -1, "p_ch_kw") - v.at(t, b, -1, "p_dis_kw");
      l3 += v.mean(t, b, -1, "p_ess_kw");
      for (int i = 0; i < v.zones(b); ++i) {
        up += v.at(t, b, i, "r_up_kw");
        dn += v.at(t, b, i, "r_dn_kw");
        l1 += v.at(t, b, i, "l1_p_h_kw");
        l2 += v.at(t, b, i, "p_h_kw");
        l3 += v.mean(t, b, i, "p_h_kw");
        du += v.mean(t, b, i, "ffr_up_kw");
        dd += v.mean(t, b, i, "ffr_dn_kw");
      }
    }
    s += std::to_string(t) + "," + f(up) + "," + f(dn) + "," + f(l1) + "," +
         f(l2) + "," + f(l3) + "," + f(du) + "," + f(dd) + "\n";
  }
  out.push_back({"fig6_smpc_levels.csv", s});
  return out;
}

}  // namespace cems::io
