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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cems/error.hpp"
#include "cems/lp/simplex.hpp"

namespace cems::control {
namespace {

using model::Role;

// Mixed into the run seed for the realized-irradiance draw so it is not
// the same stream as the day-ahead scenarios.
constexpr std::uint64_t kTruthStream = 0x9e3779b97f4a7c15ULL;
// Slack magnitudes below this are solver noise, not warnings.
constexpr double kSlackReportTol = 1e-7;
constexpr double kHonorTol = 1e-9;
constexpr double kCorridorTol = 1e-6;

int num_zones(const CommunityConfig& cfg, int b) {
  return static_cast<int>(cfg.buildings[b].zones.size());
}

void require_valid(const CommunityConfig& cfg) {
  auto v = validate_config(cfg);
  if (!v.empty()) {
    throw InputError("invalid config: " + v.front().path + " (" +
                     v.front().message + ")");
  }
}

FfrCommitment commitment_of(const CommunityConfig& cfg,
                            const DayAheadPlan& plan) {
  const int T = cfg.time.horizon_steps;
  const int nb = static_cast<int>(cfg.buildings.size());
  FfrCommitment c;
  c.r_e_up.assign(T, std::vector<double>(nb, 0.0));
  c.r_e_dn = c.r_e_up;
  c.r_h_up.resize(T);
  for (int t = 0; t < T; ++t) {
    for (int b = 0; b < nb; ++b) {
      c.r_h_up[t].emplace_back(num_zones(cfg, b), 0.0);
    }
  }
  c.r_h_dn = c.r_up = c.r_dn = c.r_h_up;
  for (int t = 0; t < T; ++t) {
    for (int b = 0; b < nb; ++b) {
      c.r_e_up[t][b] = plan.at(Role::kREUp, t, b);
      c.r_e_dn[t][b] = plan.at(Role::kREDn, t, b);
      for (int i = 0; i < num_zones(cfg, b); ++i) {
        c.r_h_up[t][b][i] = plan.at(Role::kRHUp, t, b, i);
        c.r_h_dn[t][b][i] = plan.at(Role::kRHDn, t, b, i);
        c.r_up[t][b][i] = plan.at(Role::kRUp, t, b, i);
        c.r_dn[t][b][i] = plan.at(Role::kRDn, t, b, i);
      }
    }
  }
  return c;
}

BuildingSlice slice_of(const model::Schedule& s, const CommunityConfig& cfg,
                       int k, int b) {
  BuildingSlice out;
  out.p_ch = s.at(Role::kPCh, k, b);
  out.p_dis = s.at(Role::kPDis, k, b);
  out.r_e_up = s.at(Role::kREUp, k, b);
  out.r_e_dn = s.at(Role::kREDn, k, b);
  out.r_ch_up = s.at(Role::kRChUp, k, b);
  out.r_ch_dn = s.at(Role::kRChDn, k, b);
  out.r_dis_up = s.at(Role::kRDisUp, k, b);
  out.r_dis_dn = s.at(Role::kRDisDn, k, b);
  for (int i = 0; i < num_zones(cfg, b); ++i) {
    out.p_h.push_back(s.at(Role::kPH, k, b, i));
    out.r_h_up.push_back(s.at(Role::kRHUp, k, b, i));
    out.r_h_dn.push_back(s.at(Role::kRHDn, k, b, i));
    out.r_up.push_back(s.at(Role::kRUp, k, b, i));
    out.r_dn.push_back(s.at(Role::kRDn, k, b, i));
  }
  return out;
}

}  // namespace

double DayAheadPlan::at(Role role, int t, int b, int i) const {
  const std::size_t part =
      mode.kind == Mode::Kind::kCems ? 0 : static_cast<std::size_t>(b);
  if (part >= parts.size()) throw StateError("plan has no such building");
  return parts[part].at(role, t, b, i);
}

DayAheadPlan run_level1(const CommunityConfig& cfg,
                        const scenario::ScenarioSet& scenarios, Mode mode) {
  require_valid(cfg);
  DayAheadPlan plan;
  plan.mode = mode;
  plan.pv_irradiance = scenario::most_probable(scenarios);
  std::vector<Mode> parts;
  if (mode.kind == Mode::Kind::kCems) {
    parts = {Mode::cems()};
  } else {
    for (int b = 0; b < static_cast<int>(cfg.buildings.size()); ++b) {
      parts.push_back(Mode::bems(b));
    }
  }
  for (Mode m : parts) {
    model::BuiltModel built = model::build_level1(cfg, plan.pv_irradiance, m);
    lp::Solution sol = model::solve_model(built);
    plan.objective_value += sol.objective_value;
    plan.parts.push_back(model::extract_schedule(sol, built));
  }
  plan.commitment = commitment_of(cfg, plan);
  return plan;
}

PlantState PlantState::initial(const CommunityConfig& cfg) {
  PlantState st;
  for (const auto& b : cfg.buildings) {
    st.soc_kwh.push_back(b.ess.soc_boundary_kwh());
    std::vector<double> temps;
    for (const auto& z : b.zones) temps.push_back(z.t_in_init_c);
    st.t_in_c.push_back(std::move(temps));
  }
  return st;
}

Level2Result run_level2_step(const CommunityConfig& cfg, int k,
                             const DayAheadPlan& plan,
                             const scenario::ScenarioSet& scenarios,
                             const PlantState& plant) {
  const int nb = static_cast<int>(cfg.buildings.size());
  std::vector<Mode> parts;
  if (plan.mode.kind == Mode::Kind::kCems) {
    parts = {Mode::cems()};
  } else {
    for (int b = 0; b < nb; ++b) parts.push_back(Mode::bems(b));
  }
  Level2Result res;
  res.k = k;
  res.slice.resize(nb);
  res.soc_next.resize(nb);
  res.t_in_next.resize(nb);
  res.scenario_energy_cost.assign(scenarios.num_scenarios(), 0.0);
  const double dt = cfg.time.step_hours;
  for (Mode m : parts) {
    model::BuiltModel built = model::build_level2(
        cfg, scenarios, k, cfg.time.smpc_horizon_N, plan.commitment,
        plant.snapshot(), m);
    lp::Solution sol = model::solve_model(built);
    model::Schedule s = model::extract_schedule(sol, built);
    res.window_end = built.t_end;
    res.objective += sol.objective_value;
    for (const auto& [key, v] : s.values()) {
      if (key.role == Role::kSlack && v > kSlackReportTol) {
        res.slack_total += v;
        std::ostringstream os;
        os << "step " << k << ": slack " << model::var_name(key) << " = "
           << v;
        res.warnings.push_back(os.str());
      }
      const bool billed =
          m.kind == Mode::Kind::kCems
              ? (key.role == Role::kGIm || key.role == Role::kGEx)
              : (key.role == Role::kPIm || key.role == Role::kPEx);
      if (billed && key.s >= 0) {
        const double price = key.role == Role::kGIm || key.role == Role::kPIm
                                 ? cfg.prices.lambda_import[key.t]
                                 : -cfg.prices.lambda_export[key.t];
        res.scenario_energy_cost[key.s] += dt * price * v;
      }
    }
    for (int b = 0; b < nb; ++b) {
      if (!m.includes(b)) continue;
      res.slice[b] = slice_of(s, cfg, k, b);
      res.soc_next[b] = s.at(Role::kE, k + 1, b);
      for (int i = 0; i < num_zones(cfg, b); ++i) {
        res.t_in_next[b].push_back(s.at(Role::kTIn, k + 1, b, i));
      }
    }
  }
  return res;
}

Level3Result run_level3(const CommunityConfig& cfg,
                        const std::vector<BuildingSlice>& slice,
                        const std::vector<double>& reg) {
  const int nb = static_cast<int>(slice.size());
  Level3Result out;
  out.substeps = static_cast<int>(reg.size());
  out.w = reg;
  out.p_ch.reserve(reg.size());
  for (std::size_t n = 0; n < reg.size(); ++n) {
    const double w = reg[n];
    if (!(std::abs(w) <= 1.0)) {
      throw InputError("regulation value outside [-1, 1] at substep " +
                       std::to_string(n));
    }
    const double up = std::max(w, 0.0), dn = std::max(-w, 0.0);
    std::vector<double> pch(nb), pdis(nb);
    std::vector<std::vector<double>> ph(nb), dep_up(nb), dep_dn(nb);
    for (int b = 0; b < nb; ++b) {
      const BuildingSlice& sl = slice[b];
      const EssParams& ess = cfg.buildings[b].ess;
      const double want_ch = sl.p_ch - up * sl.r_ch_up + dn * sl.r_ch_dn;
      const double want_dis = sl.p_dis + up * sl.r_dis_up - dn * sl.r_dis_dn;
      pch[b] = std::clamp(want_ch, 0.0, ess.p_ch_max_kw);
      pdis[b] = std::clamp(want_dis, 0.0, ess.p_dis_max_kw);
      if (std::abs(pch[b] - want_ch) > 1e-9 ||
          std::abs(pdis[b] - want_dis) > 1e-9) {
        ++out.saturation_events;
      }
      // Net reduction of battery consumption.
      const double d_e = (sl.p_ch - pch[b]) + (pdis[b] - sl.p_dis);
      const int nz = static_cast<int>(sl.p_h.size());
      ph[b].resize(nz);
      dep_up[b].resize(nz);
      dep_dn[b].resize(nz);
      for (int i = 0; i < nz; ++i) {
        const double pmax = cfg.buildings[b].zones[i].p_h_max_kw;
        const double want = sl.p_h[i] - up * sl.r_h_up[i] + dn * sl.r_h_dn[i];
        ph[b][i] = std::clamp(want, 0.0, pmax);
        if (std::abs(ph[b][i] - want) > 1e-9) ++out.saturation_events;
        const double d = d_e + (sl.p_h[i] - ph[b][i]);
        dep_up[b][i] = std::max(d, 0.0);
        dep_dn[b][i] = std::max(-d, 0.0);
      }
    }
    out.p_ch.push_back(std::move(pch));
    out.p_dis.push_back(std::move(pdis));
    out.p_h.push_back(std::move(ph));
    out.deployed_up.push_back(std::move(dep_up));
    out.deployed_dn.push_back(std::move(dep_dn));
  }
  return out;
}

PlantStepOutcome plant_step(const CommunityConfig& cfg, const PlantState& state,
                            const Level3Result& u, double irradiance_wm2,
                            Mode mode) {
  const int nb = static_cast<int>(cfg.buildings.size());
  const int k = state.step;
  const double dt = cfg.time.step_hours;
  const int n_sub = u.substeps;
  const double h = n_sub > 0 ? dt / n_sub : dt;
  const double lam_im = cfg.prices.lambda_import[k];
  const double lam_ex = cfg.prices.lambda_export[k];

  PlantStepOutcome out;
  out.next = state;
  out.next.step = k + 1;
  out.building_import_kwh.assign(nb, 0.0);
  out.building_export_kwh.assign(nb, 0.0);
  out.soc_min = state.soc_kwh;
  out.soc_max = state.soc_kwh;
  out.p_h_mean.resize(nb);
  std::vector<double> pv(nb), demand(nb);
  for (int b = 0; b < nb; ++b) {
    const BuildingConfig& bc = cfg.buildings[b];
    pv[b] = pv_output(bc.pv, irradiance_wm2);
    demand[b] = bc.demand_load[k] + bc.demand_ev[k];
    out.p_h_mean[b].assign(bc.zones.size(), 0.0);
  }

  std::vector<double> soc = state.soc_kwh;
  for (int n = 0; n < n_sub; ++n) {
    double community = 0.0;
    for (int b = 0; b < nb; ++b) {
      const EssParams& ess = cfg.buildings[b].ess;
      const double pch = u.p_ch[n][b], pdis = u.p_dis[n][b];
      soc[b] += h * (ess.eta_ch * pch - pdis / ess.eta_dis);
      if (soc[b] < 0.0 || soc[b] > ess.capacity_kwh) {
        std::ostringstream os;
        os << "step " << k << " substep " << n << ": building " << b
           << " SoC " << soc[b] << " clipped to [0, " << ess.capacity_kwh
           << "]";
        out.log.push_back(os.str());
        ++out.clip_events;
        soc[b] = std::clamp(soc[b], 0.0, ess.capacity_kwh);
      }
      out.soc_min[b] = std::min(out.soc_min[b], soc[b]);
      out.soc_max[b] = std::max(out.soc_max[b], soc[b]);
      double hvac = 0.0;
      for (std::size_t i = 0; i < u.p_h[n][b].size(); ++i) {
        hvac += u.p_h[n][b][i];
        out.p_h_mean[b][i] += u.p_h[n][b][i];
      }
      const double net = demand[b] + pch + hvac - pdis - pv[b];
      community += net;
      out.building_import_kwh[b] += h * std::max(net, 0.0);
      out.building_export_kwh[b] += h * std::max(-net, 0.0);
    }
    if (mode.kind == Mode::Kind::kCems) {
      out.import_kwh += h * std::max(community, 0.0);
      out.export_kwh += h * std::max(-community, 0.0);
    }
  }
  if (mode.kind == Mode::Kind::kBems) {
    for (int b = 0; b < nb; ++b) {
      out.import_kwh += out.building_import_kwh[b];
      out.export_kwh += out.building_export_kwh[b];
    }
  }
  out.energy_cost = lam_im * out.import_kwh - lam_ex * out.export_kwh;
  out.next.soc_kwh = soc;

  for (int b = 0; b < nb; ++b) {
    const BuildingConfig& bc = cfg.buildings[b];
    for (std::size_t i = 0; i < bc.zones.size(); ++i) {
      double& mean = out.p_h_mean[b][i];
      mean = n_sub > 0 ? mean / n_sub : 0.0;
      out.next.t_in_c[b][i] = etp_step(bc.zones[i], dt, state.t_in_c[b][i],
                                       cfg.exogenous.t_out[k], mean);
    }
  }
  return out;
}

namespace {

class TraceWriter {
 public:
  explicit TraceWriter(std::vector<TraceRow>& rows) : rows_(rows) {}
  void add(int step, int sub, int b, int i, const char* field, double v) {
    rows_.push_back({step, sub, b, i, field, v});
  }

 private:
  std::vector<TraceRow>& rows_;
};

}  // namespace

ClosedLoopTrace simulate_day(const CommunityConfig& cfg,
                             const SimOptions& options) {
  require_valid(cfg);
  scenario::CovModel cov = options.cov;
  cov.seed = options.seed;
  const double dt = cfg.time.step_hours;
  scenario::ScenarioSet day = scenario::generate_day_ahead(
      cfg.exogenous, cov, options.num_scenarios, dt);
  std::vector<double> truth = cfg.exogenous.truth_irradiance;
  if (truth.empty()) {
    scenario::CovModel tc = cov;
    tc.seed = options.seed ^ kTruthStream;
    truth = scenario::generate_day_ahead(cfg.exogenous, tc, 1, dt)
                .irradiance[0];
  }
  return simulate_day(cfg, options, day, truth);
}

ClosedLoopTrace simulate_day(const CommunityConfig& cfg,
                             const SimOptions& options,
                             const scenario::ScenarioSet& day_ahead,
                             const std::vector<double>& truth) {
  require_valid(cfg);
  const int T = cfg.time.horizon_steps;
  const int nb = static_cast<int>(cfg.buildings.size());
  const int n_sub = cfg.time.substeps_per_step();
  const double dt = cfg.time.step_hours;
  const double h = dt / n_sub;
  if (static_cast<int>(truth.size()) < T) {
    throw InputError("realized irradiance shorter than the horizon");
  }
  scenario::CovModel cov = options.cov;
  cov.seed = options.seed;

  ClosedLoopTrace trace;
  trace.mode = options.mode;
  trace.horizon = T;
  trace.step_hours = dt;
  TraceWriter tw(trace.rows);

  DayAheadPlan plan = run_level1(cfg, day_ahead, options.mode);
  trace.level1_objective = plan.objective_value;
  trace.commitment = plan.commitment;

  PlantState state = PlantState::initial(cfg);
  const std::vector<double>& reg_all = cfg.exogenous.reg_signal;
  std::vector<double> reg(n_sub, 0.0);

  auto check_temps = [&](const PlantState& st) {
    for (int b = 0; b < nb; ++b) {
      for (int i = 0; i < num_zones(cfg, b); ++i) {
        const auto& z = cfg.buildings[b].zones[i];
        const double t = st.t_in_c[b][i];
        if (t < z.temp_min_c - kCorridorTol ||
            t > z.temp_max_c + kCorridorTol) {
          ++trace.temp_violations;
        }
      }
    }
  };

  for (int k = 0; k < T; ++k) {
    check_temps(state);
    scenario::ScenarioSet scen =
        k == 0 ? day_ahead
               : scenario::update_hourly(day_ahead, cov, k, truth, dt);
    HourRecord rec;
    rec.step = k;
    rec.soc_start = state.soc_kwh;
    rec.t_in_start = state.t_in_c;
    rec.level2 = run_level2_step(cfg, k, plan, scen, state);
    for (const auto& w : rec.level2.warnings) trace.warnings.push_back(w);

    if (!reg_all.empty()) {
      std::copy(reg_all.begin() + static_cast<long>(k) * n_sub,
                reg_all.begin() + static_cast<long>(k + 1) * n_sub,
                reg.begin());
    }
    Level3Result l3 = run_level3(cfg, rec.level2.slice, reg);
    rec.saturation_events = l3.saturation_events;
    PlantStepOutcome out = plant_step(cfg, state, l3, truth[k], options.mode);
    for (const auto& line : out.log) trace.warnings.push_back(line);

    rec.energy_cost = out.energy_cost;
    rec.import_kwh = out.import_kwh;
    rec.export_kwh = out.export_kwh;
    rec.clip_events = out.clip_events;
    for (int b = 0; b < nb; ++b) {
      const BuildingConfig& bc = cfg.buildings[b];
      rec.pv_kw.push_back(pv_output(bc.pv, truth[k]));
      if (out.soc_min[b] < bc.ess.soc_min_kwh() - kCorridorTol ||
          out.soc_max[b] > bc.ess.soc_max_kwh() + kCorridorTol) {
        ++rec.soc_violations;
      }
      for (int i = 0; i < num_zones(cfg, b); ++i) {
        const HvacZoneParams& z = bc.zones[i];
        const double t_in = state.t_in_c[b][i];
        const model::ComfortCuts cuts =
            model::add_comfort_cuts(z, cfg.comfort_cuts);
        rec.comfort_cost += cfg.prices.lambda_comfort * cuts.envelope(t_in);
        rec.comfort_exact += comfort_sigma(z.comfort, t_in) * dt;
        const double r_up = plan.commitment.r_up[k][b][i];
        const double r_dn = plan.commitment.r_dn[k][b][i];
        rec.ffr_revenue += cfg.prices.lambda_ffr * (r_up + r_dn);
        rec.ffr_committed_kwh += (r_up + r_dn) * dt;
        for (int n = 0; n < n_sub; ++n) {
          const double du = l3.deployed_up[n][b][i];
          const double dd = l3.deployed_dn[n][b][i];
          rec.ffr_deployed_kwh += h * (du + dd);
          if (du > r_up + kHonorTol || dd > r_dn + kHonorTol) {
            ++rec.honor_violations;
          }
        }
      }
    }

    // Long-format records.
    tw.add(k, -1, -1, -1, "energy_cost", rec.energy_cost);
    tw.add(k, -1, -1, -1, "comfort_cost", rec.comfort_cost);
    tw.add(k, -1, -1, -1, "ffr_revenue", rec.ffr_revenue);
    tw.add(k, -1, -1, -1, "grid_import_kwh", rec.import_kwh);
    tw.add(k, -1, -1, -1, "grid_export_kwh", rec.export_kwh);
    tw.add(k, -1, -1, -1, "level2_objective", rec.level2.objective);
    tw.add(k, -1, -1, -1, "slack", rec.level2.slack_total);
    tw.add(k, -1, -1, -1, "irradiance_wm2", truth[k]);
    for (std::size_t s = 0; s < rec.level2.scenario_energy_cost.size(); ++s) {
      tw.add(k, -1, -1, static_cast<int>(s), "scenario_energy_cost",
             rec.level2.scenario_energy_cost[s]);
    }
    for (int b = 0; b < nb; ++b) {
      const BuildingSlice& sl = rec.level2.slice[b];
      tw.add(k, -1, b, -1, "soc_kwh", state.soc_kwh[b]);
      tw.add(k, -1, b, -1, "pv_kw", rec.pv_kw[b]);
      tw.add(k, -1, b, -1, "l1_p_ch_kw", plan.at(Role::kPCh, k, b));
      tw.add(k, -1, b, -1, "l1_p_dis_kw", plan.at(Role::kPDis, k, b));
      tw.add(k, -1, b, -1, "p_ch_kw", sl.p_ch);
      tw.add(k, -1, b, -1, "p_dis_kw", sl.p_dis);
      tw.add(k, -1, b, -1, "r_e_up_kw", sl.r_e_up);
      tw.add(k, -1, b, -1, "r_e_dn_kw", sl.r_e_dn);
      tw.add(k, -1, b, -1, "import_kwh", out.building_import_kwh[b]);
      tw.add(k, -1, b, -1, "export_kwh", out.building_export_kwh[b]);
      tw.add(k, -1, b, -1, "soc_min_kwh", out.soc_min[b]);
      tw.add(k, -1, b, -1, "soc_max_kwh", out.soc_max[b]);
      for (int i = 0; i < num_zones(cfg, b); ++i) {
        tw.add(k, -1, b, i, "t_in_c", state.t_in_c[b][i]);
        tw.add(k, -1, b, i, "sigma",
               comfort_sigma(cfg.buildings[b].zones[i].comfort,
                             state.t_in_c[b][i]));
        tw.add(k, -1, b, i, "l1_p_h_kw", plan.at(Role::kPH, k, b, i));
        tw.add(k, -1, b, i, "p_h_kw", sl.p_h[i]);
        tw.add(k, -1, b, i, "l3_p_h_kw", out.p_h_mean[b][i]);
        tw.add(k, -1, b, i, "r_h_up_kw", sl.r_h_up[i]);
        tw.add(k, -1, b, i, "r_h_dn_kw", sl.r_h_dn[i]);
        tw.add(k, -1, b, i, "r_up_kw", plan.commitment.r_up[k][b][i]);
        tw.add(k, -1, b, i, "r_dn_kw", plan.commitment.r_dn[k][b][i]);
      }
    }
    for (int n = 0; n < n_sub; ++n) {
      tw.add(k, n, -1, -1, "w", l3.w[n]);
      for (int b = 0; b < nb; ++b) {
        tw.add(k, n, b, -1, "p_ess_kw", l3.p_ch[n][b] - l3.p_dis[n][b]);
        for (int i = 0; i < num_zones(cfg, b); ++i) {
          tw.add(k, n, b, i, "p_h_kw", l3.p_h[n][b][i]);
          tw.add(k, n, b, i, "ffr_up_kw", l3.deployed_up[n][b][i]);
          tw.add(k, n, b, i, "ffr_dn_kw", l3.deployed_dn[n][b][i]);
        }
      }
    }

    trace.hours.push_back(std::move(rec));
    state = out.next;
  }
  check_temps(state);
  for (int b = 0; b < nb; ++b) {
    tw.add(T, -1, b, -1, "soc_kwh", state.soc_kwh[b]);
    for (int i = 0; i < num_zones(cfg, b); ++i) {
      tw.add(T, -1, b, i, "t_in_c", state.t_in_c[b][i]);
    }
  }
  trace.final_state = state;
  return trace;
}

Summary compute_metrics(const ClosedLoopTrace& trace) {
  if (trace.horizon <= 0 ||
      static_cast<int>(trace.hours.size()) != trace.horizon) {
    throw InputError("trace covers " + std::to_string(trace.hours.size()) +
                     " of " + std::to_string(trace.horizon) + " steps");
  }
  Summary s;
  s.mode = trace.mode.kind == Mode::Kind::kCems ? "cems" : "bems";
  s.horizon = trace.horizon;
  s.level1_objective = trace.level1_objective;
  s.temp_excursions = trace.temp_violations;
  for (const HourRecord& r : trace.hours) {
    s.energy_cost += r.energy_cost;
    s.comfort_cost += r.comfort_cost;
    s.ffr_revenue += r.ffr_revenue;
    s.ffr_committed_kwh += r.ffr_committed_kwh;
    s.ffr_deployed_kwh += r.ffr_deployed_kwh;
    s.comfort_integral += r.comfort_exact;
    s.grid_import_kwh += r.import_kwh;
    s.grid_export_kwh += r.export_kwh;
    s.net_demand_kwh.push_back(r.import_kwh - r.export_kwh);
    s.cumulative_net_demand_kwh += r.import_kwh - r.export_kwh;
    s.soc_violations += r.soc_violations;
    s.honor_violations += r.honor_violations;
    s.clip_events += r.clip_events;
    s.saturation_events += r.saturation_events;
    s.slack_total += r.level2.slack_total;
  }
  s.total_cost = s.energy_cost + s.comfort_cost - s.ffr_revenue;
  return s;
}

}  // namespace cems::control
