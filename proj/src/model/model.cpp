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

#include "cems/model/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "cems/error.hpp"
#include "cems/lp/branch_and_bound.hpp"

namespace cems::model {
namespace {

using lp::Sense;
using lp::Term;

// Elastic slack prices, as multiples of the highest import price.
constexpr double kBalanceSlackFactor = 100.0;
constexpr double kReserveSlackFactor = 1e4;

std::string suffix(int t, int b, int i = -1, int s = -1) {
  std::string out;
  if (t >= 0) out += "_t" + std::to_string(t);
  if (b >= 0) out += "_b" + std::to_string(b);
  if (i >= 0) out += "_i" + std::to_string(i);
  if (s >= 0) out += "_s" + std::to_string(s);
  return out;
}

void require_valid(const CommunityConfig& cfg, Mode mode) {
  auto violations = validate_config(cfg);
  if (!violations.empty()) {
    std::string msg = "invalid config:";
    for (const auto& v : violations) msg += " " + v.path + " (" + v.message + ");";
    throw InputError(msg);
  }
  for (std::size_t b = 0; b < cfg.buildings.size(); ++b) {
    if (cfg.buildings[b].zones.empty()) {
      throw InputError("building " + cfg.buildings[b].id + " has no zones");
    }
  }
  if (mode.kind == Mode::Kind::kBems &&
      (mode.building < 0 ||
       mode.building >= static_cast<int>(cfg.buildings.size()))) {
    throw InputError("bems building index out of range");
  }
}

class Builder {
 public:
  Builder(const CommunityConfig& cfg, BuiltModel& m, bool elastic)
      : cfg_(cfg), m_(m), elastic_(elastic) {
    const double lam = cfg.max_import_price();
    slack_base_ = lam > 0.0 ? lam : 1.0;
  }

  int var(const VarKey& key, double lo, double hi, double cost) {
    const int c = m_.vars.add(key);
    m_.problem.lp.add_var(var_name(key), lo, hi, cost);
    return c;
  }
  int col(Role r, int t, int b, int i = -1, int s = -1) const {
    return m_.vars.at({r, t, b, i, s});
  }
  void row(std::vector<Term> terms, Sense sense, double rhs,
           const std::string& family, int t, int b, int i = -1, int s = -1) {
    m_.problem.lp.add_row(std::move(terms), sense, rhs,
                          family + suffix(t, b, i, s));
  }
  // Adds an elastic slack column to `terms` when building Level 2. `sign`
  // is the coefficient that relaxes the row.
  void relax(std::vector<Term>& terms, SlackKind kind, double sign, int t,
             int b, int i = -1) {
    if (!elastic_) return;
    const int c = var({Role::kSlack, t, b, i, -1, kind}, 0.0, lp::kInf,
                      kReserveSlackFactor * slack_base_);
    terms.push_back({c, sign});
  }

  // lo <= x <= hi as two elastic rows.
  void corridor(int c, double lo, double hi, SlackKind low, SlackKind high,
                const std::string& family, int t, int b, int i = -1) {
    std::vector<Term> ge = {{c, 1.0}};
    relax(ge, low, 1.0, t, b, i);
    row(std::move(ge), Sense::kGe, lo, family + "_lo", t, b, i);
    std::vector<Term> le = {{c, 1.0}};
    relax(le, high, -1.0, t, b, i);
    row(std::move(le), Sense::kLe, hi, family + "_hi", t, b, i);
  }

  // Device columns and rows of one building over [t0, t1). Reserve columns
  // are fixed to `fixed` when given.
  void add_building(int b, int t0, int t1, double e_start,
                    const std::vector<double>& t_in_start, bool terminal,
                    const FfrCommitment* fixed) {
    const BuildingConfig& bc = cfg_.buildings[b];
    const EssParams& ess = bc.ess;
    const double dt = cfg_.time.step_hours;
    const double lam_comf = cfg_.prices.lambda_comfort;
    const double lam_ffr = cfg_.prices.lambda_ffr;
    const int nz = static_cast<int>(bc.zones.size());

    for (int t = t0; t <= t1; ++t) {
      double lo = ess.soc_min_kwh(), hi = ess.soc_max_kwh();
      // Level 2 moves the corridor into elastic rows below.
      if (elastic_) lo = 0.0, hi = ess.capacity_kwh;
      if (t == t0) lo = hi = e_start;
      if (t == t1 && terminal && !elastic_) lo = hi = ess.soc_boundary_kwh();
      var({Role::kE, t, b}, lo, hi, 0.0);
    }
    for (int t = t0 + 1; elastic_ && t <= t1; ++t) {
      corridor(col(Role::kE, t, b), ess.soc_min_kwh(), ess.soc_max_kwh(),
               SlackKind::kSocLow, SlackKind::kSocHigh, "ess_soc", t, b);
    }
    if (terminal && elastic_) {
      // Plant drift can leave the day-end SoC out of reach once the
      // reserves pin the schedule, so Level 2 gets a slack pair here too.
      std::vector<Term> end = {{col(Role::kE, t1, b), 1.0}};
      relax(end, SlackKind::kTerminalShort, 1.0, t1, b);
      relax(end, SlackKind::kTerminalSurplus, -1.0, t1, b);
      row(std::move(end), Sense::kEq, ess.soc_boundary_kwh(), "ess_terminal",
          t1, b);
    }
    for (int t = t0; t < t1; ++t) {
      var({Role::kPCh, t, b}, 0.0, ess.p_ch_max_kw, 0.0);
      var({Role::kPDis, t, b}, 0.0, ess.p_dis_max_kw, 0.0);
      m_.problem.binary_vars.push_back(var({Role::kZCh, t, b}, 0.0, 1.0, 0.0));
      m_.problem.binary_vars.push_back(
          var({Role::kZDis, t, b}, 0.0, 1.0, 0.0));
      double eu_lo = 0.0, eu_hi = lp::kInf, ed_lo = 0.0, ed_hi = lp::kInf;
      if (fixed) {
        eu_lo = eu_hi = fixed->r_e_up[t][b];
        ed_lo = ed_hi = fixed->r_e_dn[t][b];
      }
      var({Role::kREUp, t, b}, eu_lo, eu_hi, 0.0);
      var({Role::kREDn, t, b}, ed_lo, ed_hi, 0.0);
      var({Role::kRChUp, t, b}, 0.0, lp::kInf, 0.0);
      var({Role::kRChDn, t, b}, 0.0, lp::kInf, 0.0);
      var({Role::kRDisUp, t, b}, 0.0, lp::kInf, 0.0);
      var({Role::kRDisDn, t, b}, 0.0, lp::kInf, 0.0);
    }
    for (int i = 0; i < nz; ++i) {
      const HvacZoneParams& z = bc.zones[i];
      for (int t = t0; t <= t1; ++t) {
        double lo = z.temp_min_c, hi = z.temp_max_c;
        if (elastic_) lo = -lp::kInf, hi = lp::kInf;
        if (t == t0) lo = hi = t_in_start[i];
        var({Role::kTIn, t, b, i}, lo, hi, 0.0);
      }
      for (int t = t0 + 1; elastic_ && t <= t1; ++t) {
        corridor(col(Role::kTIn, t, b, i), z.temp_min_c, z.temp_max_c,
                 SlackKind::kTempLow, SlackKind::kTempHigh, "temp", t, b, i);
      }
      for (int t = t0; t < t1; ++t) {
        var({Role::kPH, t, b, i}, 0.0, z.p_h_max_kw, 0.0);
        var({Role::kSigma, t, b, i}, -lp::kInf, lp::kInf, lam_comf);
        double hu_lo = 0.0, hu_hi = lp::kInf, hd_lo = 0.0, hd_hi = lp::kInf;
        if (fixed) {
          hu_lo = hu_hi = fixed->r_h_up[t][b][i];
          hd_lo = hd_hi = fixed->r_h_dn[t][b][i];
        }
        var({Role::kRHUp, t, b, i}, hu_lo, hu_hi, 0.0);
        var({Role::kRHDn, t, b, i}, hd_lo, hd_hi, 0.0);
        var({Role::kRUp, t, b, i}, 0.0, lp::kInf, -lam_ffr);
        var({Role::kRDn, t, b, i}, 0.0, lp::kInf, -lam_ffr);
      }
    }

    // ESS rows.
    for (int t = t0; t < t1; ++t) {
      const int e0 = col(Role::kE, t, b), e1 = col(Role::kE, t + 1, b);
      const int pch = col(Role::kPCh, t, b), pdis = col(Role::kPDis, t, b);
      const int zch = col(Role::kZCh, t, b), zdis = col(Role::kZDis, t, b);
      const int reu = col(Role::kREUp, t, b), red = col(Role::kREDn, t, b);
      const int rcu = col(Role::kRChUp, t, b), rcd = col(Role::kRChDn, t, b);
      const int rdu = col(Role::kRDisUp, t, b);
      const int rdd = col(Role::kRDisDn, t, b);
      row({{e1, 1.0}, {e0, -1.0}, {pch, -dt * ess.eta_ch},
           {pdis, dt / ess.eta_dis}},
          Sense::kEq, 0.0, "ess_dyn", t, b);
      row({{pch, 1.0}, {zch, -ess.p_ch_max_kw}}, Sense::kLe, 0.0,
          "ess_ch_cap", t, b);
      row({{pdis, 1.0}, {zdis, -ess.p_dis_max_kw}}, Sense::kLe, 0.0,
          "ess_dis_cap", t, b);
      row({{zch, 1.0}, {zdis, 1.0}}, Sense::kLe, 1.0, "ess_excl", t, b);
      row({{pdis, 1.0}, {rdu, 1.0}}, Sense::kLe, ess.p_dis_max_kw,
          "ess_dis_up", t, b);
      row({{pdis, 1.0}, {rdd, -1.0}, {zdis, -ess.p_dis_min_kw}}, Sense::kGe,
          0.0, "ess_dis_dn", t, b);
      row({{pch, 1.0}, {rcu, -1.0}, {zch, -ess.p_ch_min_kw}}, Sense::kGe, 0.0,
          "ess_ch_up", t, b);
      row({{pch, 1.0}, {rcd, 1.0}}, Sense::kLe, ess.p_ch_max_kw, "ess_ch_dn",
          t, b);

      std::vector<Term> res_dn = {{e1, 1.0},
                                  {rcd, dt * ess.eta_ch},
                                  {rdd, dt / ess.eta_dis}};
      relax(res_dn, SlackKind::kEssReserveDn, -1.0, t, b);
      row(std::move(res_dn), Sense::kLe, ess.soc_max_kwh(), "ess_res_dn", t,
          b);
      std::vector<Term> res_up = {{e1, 1.0},
                                  {rcu, -dt * ess.eta_ch},
                                  {rdu, -dt / ess.eta_dis}};
      relax(res_up, SlackKind::kEssReserveUp, 1.0, t, b);
      row(std::move(res_up), Sense::kGe, ess.soc_min_kwh(), "ess_res_up", t,
          b);

      std::vector<Term> head_lo = {{e0, 1.0}, {red, -1.0}};
      relax(head_lo, SlackKind::kHeadroomLow, 1.0, t, b);
      row(std::move(head_lo), Sense::kGe, ess.e_min_kwh, "ess_headroom_lo", t,
          b);
      std::vector<Term> head_hi = {{e0, 1.0}, {reu, 1.0}};
      relax(head_hi, SlackKind::kHeadroomHigh, -1.0, t, b);
      row(std::move(head_hi), Sense::kLe, ess.e_max_kwh, "ess_headroom_hi", t,
          b);

      row({{reu, 1.0}, {rcu, -1.0}, {rdu, -1.0}}, Sense::kEq, 0.0,
          "ess_link_up", t, b);
      row({{red, 1.0}, {rcd, -1.0}, {rdd, -1.0}}, Sense::kEq, 0.0,
          "ess_link_dn", t, b);
    }

    // Zone rows.
    for (int i = 0; i < nz; ++i) {
      const HvacZoneParams& z = bc.zones[i];
      const double a = 1.0 - dt / (z.heat_capacity * z.thermal_resistance);
      const double g = etp_power_gain(z, dt);
      const ComfortCuts cuts = add_comfort_cuts(z, cfg_.comfort_cuts);
      for (int t = t0; t < t1; ++t) {
        const int ti0 = col(Role::kTIn, t, b, i);
        const int ti1 = col(Role::kTIn, t + 1, b, i);
        const int ph = col(Role::kPH, t, b, i);
        const int rhu = col(Role::kRHUp, t, b, i);
        const int rhd = col(Role::kRHDn, t, b, i);
        row({{ti1, 1.0}, {ti0, -a}, {ph, g}}, Sense::kEq,
            (1.0 - a) * cfg_.exogenous.t_out[t], "etp", t, b, i);

        std::vector<Term> th_up = {{ti1, 1.0}, {rhu, g}};
        relax(th_up, SlackKind::kThermalUp, -1.0, t, b, i);
        row(std::move(th_up), Sense::kLe, z.temp_max_c, "therm_up", t, b, i);
        std::vector<Term> th_dn = {{ti1, 1.0}, {rhd, -g}};
        relax(th_dn, SlackKind::kThermalDn, 1.0, t, b, i);
        row(std::move(th_dn), Sense::kGe, z.temp_min_c, "therm_dn", t, b, i);

        row({{rhu, 1.0}, {ph, -1.0}}, Sense::kLe, 0.0, "hvac_up", t, b, i);
        row({{ph, 1.0}, {rhd, 1.0}}, Sense::kLe, z.p_h_max_kw, "hvac_dn", t,
            b, i);

        const int sg = col(Role::kSigma, t, b, i);
        for (int k = 0; k < cuts.num_cuts(); ++k) {
          const Tangent& tg = cuts.tangents[k];
          m_.problem.lp.add_row({{sg, 1.0}, {ti0, -tg.slope}}, Sense::kGe,
                                tg.intercept,
                                "comfort_cut" + suffix(t, b, i) + "_c" +
                                    std::to_string(k));
        }
        row({{col(Role::kRUp, t, b, i), 1.0}, {col(Role::kREUp, t, b), -1.0},
             {rhu, -1.0}},
            Sense::kEq, 0.0, "ffr_up", t, b, i);
        row({{col(Role::kRDn, t, b, i), 1.0}, {col(Role::kREDn, t, b), -1.0},
             {rhd, -1.0}},
            Sense::kEq, 0.0, "ffr_dn", t, b, i);
      }
    }
  }

  // Grid exchange columns and the power balance of every included building.
  // `pv[s][t]` is irradiance; s = -1 keys the deterministic Level-1 model.
  void add_balance(int t0, int t1,
                   const std::vector<std::vector<double>>& irradiance,
                   const std::vector<double>& weights, bool scenario_indexed) {
    const auto& pr = cfg_.prices;
    const bool cems = m_.mode.kind == Mode::Kind::kCems;
    const double dt = cfg_.time.step_hours;
    const int ns = static_cast<int>(weights.size());
    for (int s = 0; s < ns; ++s) {
      const int sk = scenario_indexed ? s : -1;
      const double w = weights[s];
      for (int t = t0; t < t1; ++t) {
        std::vector<Term> grid;
        for (int b = 0; b < static_cast<int>(cfg_.buildings.size()); ++b) {
          if (!m_.mode.includes(b)) continue;
          const BuildingConfig& bc = cfg_.buildings[b];
          const double im_cost = cems ? 0.0 : w * dt * pr.lambda_import[t];
          const double ex_cost = cems ? 0.0 : -w * dt * pr.lambda_export[t];
          const int pim = var({Role::kPIm, t, b, -1, sk}, 0.0, lp::kInf,
                              im_cost);
          const int pex = var({Role::kPEx, t, b, -1, sk}, 0.0, lp::kInf,
                              ex_cost);
          std::vector<Term> bal = {{pim, 1.0},
                                   {pex, -1.0},
                                   {col(Role::kPDis, t, b), 1.0},
                                   {col(Role::kPCh, t, b), -1.0}};
          for (int i = 0; i < static_cast<int>(bc.zones.size()); ++i) {
            bal.push_back({col(Role::kPH, t, b, i), -1.0});
          }
          if (elastic_) {
            const double price = w * kBalanceSlackFactor * slack_base_;
            bal.push_back({var({Role::kSlack, t, b, -1, sk,
                                SlackKind::kBalanceShort},
                               0.0, lp::kInf, price),
                           1.0});
            bal.push_back({var({Role::kSlack, t, b, -1, sk,
                                SlackKind::kBalanceSurplus},
                               0.0, lp::kInf, price),
                           -1.0});
          }
          const double demand = bc.demand_load[t] + bc.demand_ev[t];
          const double pv = pv_output(bc.pv, irradiance[s][t]);
          row(std::move(bal), Sense::kEq, demand - pv, "balance", t, b, -1,
              sk);
          grid.push_back({pim, -1.0});
          grid.push_back({pex, 1.0});
        }
        if (cems) {
          const int gim = var({Role::kGIm, t, -1, -1, sk}, 0.0, lp::kInf,
                              w * dt * pr.lambda_import[t]);
          const int gex = var({Role::kGEx, t, -1, -1, sk}, 0.0, lp::kInf,
                              -w * dt * pr.lambda_export[t]);
          grid.push_back({gim, 1.0});
          grid.push_back({gex, -1.0});
          row(std::move(grid), Sense::kEq, 0.0, "grid", t, -1, -1, sk);
        }
      }
    }
  }

 private:
  const CommunityConfig& cfg_;
  BuiltModel& m_;
  bool elastic_;
  double slack_base_ = 1.0;
};

}  // namespace

double ComfortCuts::envelope(double t_in_c) const {
  double best = -lp::kInf;
  for (const Tangent& tg : tangents) {
    best = std::max(best, tg.slope * t_in_c + tg.intercept);
  }
  return best;
}

ComfortCuts add_comfort_cuts(const HvacZoneParams& zone, int num_cuts) {
  if (num_cuts < 2) throw InputError("comfort cuts need K >= 2");
  const ComfortCoeffs& q = zone.comfort;
  const double lo = zone.temp_min_c, hi = zone.temp_max_c;
  ComfortCuts out;
  for (int k = 0; k < num_cuts; ++k) {
    const double x = lo + (hi - lo) * k / (num_cuts - 1);
    // Tangent of a x^2 + b x + c at x.
    out.tangents.push_back({2.0 * q.a * x + q.b, q.c - q.a * x * x, x});
  }
  return out;
}

double FfrCommitment::total() const {
  double sum = 0.0;
  for (std::size_t t = 0; t < r_up.size(); ++t) {
    for (std::size_t b = 0; b < r_up[t].size(); ++b) {
      for (std::size_t i = 0; i < r_up[t][b].size(); ++i) {
        sum += r_up[t][b][i] + r_dn[t][b][i];
      }
    }
  }
  return sum;
}

BuiltModel build_level1(const CommunityConfig& cfg,
                        const std::vector<double>& pv_irradiance, Mode mode) {
  require_valid(cfg, mode);
  const int T = cfg.time.horizon_steps;
  if (static_cast<int>(pv_irradiance.size()) < T) {
    throw InputError("pv scenario shorter than the horizon");
  }
  BuiltModel m;
  m.mode = mode;
  m.t_begin = 0;
  m.t_end = T;
  m.weights = {1.0};
  m.dump_name = "level1_k0";
  Builder bld(cfg, m, /*elastic=*/false);
  for (int b = 0; b < static_cast<int>(cfg.buildings.size()); ++b) {
    if (!mode.includes(b)) continue;
    const BuildingConfig& bc = cfg.buildings[b];
    std::vector<double> t0;
    for (const auto& z : bc.zones) t0.push_back(z.t_in_init_c);
    bld.add_building(b, 0, T, bc.ess.soc_boundary_kwh(), t0, true, nullptr);
  }
  bld.add_balance(0, T, {pv_irradiance}, m.weights, false);
  return m;
}

BuiltModel build_level2(const CommunityConfig& cfg,
                        const scenario::ScenarioSet& scenarios, int k, int N,
                        const FfrCommitment& commitment,
                        const PlantSnapshot& state, Mode mode) {
  require_valid(cfg, mode);
  const int T = cfg.time.horizon_steps;
  if (k < 0 || k >= T) throw InputError("level-2 step outside the horizon");
  if (N < 1) throw InputError("level-2 window must be >= 1 step");
  if (scenarios.num_scenarios() < 1 || scenarios.horizon() < T) {
    throw InputError("scenario set does not cover the horizon");
  }
  const int t1 = std::min(k + N, T);
  const int nb = static_cast<int>(cfg.buildings.size());
  auto sized = [&](const auto& v, std::size_t n) { return v.size() >= n; };
  bool ok = commitment.horizon() >= t1 && sized(state.soc_kwh, nb) &&
            sized(state.t_in_c, nb);
  for (int t = k; ok && t < t1; ++t) {
    ok = sized(commitment.r_e_up[t], nb) && sized(commitment.r_e_dn[t], nb) &&
         sized(commitment.r_h_up[t], nb) && sized(commitment.r_h_dn[t], nb);
    for (int b = 0; ok && b < nb; ++b) {
      const std::size_t nz = cfg.buildings[b].zones.size();
      ok = sized(commitment.r_h_up[t][b], nz) &&
           sized(commitment.r_h_dn[t][b], nz) && sized(state.t_in_c[b], nz);
    }
  }
  if (!ok) throw InputError("commitment or plant state misses window entries");

  BuiltModel m;
  m.mode = mode;
  m.t_begin = k;
  m.t_end = t1;
  m.num_scenarios = scenarios.num_scenarios();
  m.weights = scenarios.weights;
  m.dump_name = "level2_k" + std::to_string(k);
  Builder bld(cfg, m, /*elastic=*/true);
  for (int b = 0; b < nb; ++b) {
    if (!mode.includes(b)) continue;
    bld.add_building(b, k, t1, state.soc_kwh[b], state.t_in_c[b], t1 == T,
                     &commitment);
  }
  bld.add_balance(k, t1, scenarios.irradiance, m.weights, true);
  return m;
}

Schedule::Schedule(const BuiltModel& model, const lp::Solution& sol)
    : objective(sol.objective_value),
      t_begin(model.t_begin),
      t_end(model.t_end) {
  std::vector<bool> binary(model.vars.size(), false);
  for (int j : model.problem.binary_vars) binary[j] = true;
  for (int c = 0; c < model.vars.size(); ++c) {
    double v = sol.primal[c];
    if (binary[c]) v = std::round(v);
    values_.emplace(model.vars.key(c), v);
  }
}

std::optional<double> Schedule::value(const VarKey& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> Schedule::value(Role role, int t, int b, int i,
                                      int s) const {
  return value(VarKey{role, t, b, i, s});
}

double Schedule::at(Role role, int t, int b, int i, int s) const {
  auto v = value(role, t, b, i, s);
  if (!v) {
    throw StateError("schedule has no " + var_name({role, t, b, i, s}));
  }
  return *v;
}

std::optional<std::vector<double>> Schedule::series(Role role, int b, int i,
                                                    int s) const {
  std::vector<double> out;
  for (int t = t_begin; t <= t_end; ++t) {
    if (auto v = value(role, t, b, i, s)) out.push_back(*v);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

double Schedule::slack_total() const {
  double sum = 0.0;
  for (const auto& [key, v] : values_) {
    if (key.role == Role::kSlack) sum += v;
  }
  return sum;
}

Schedule extract_schedule(const lp::Solution& sol, const BuiltModel& model) {
  if (sol.status != lp::Status::kOptimal) {
    throw StateError(std::string("cannot extract a schedule from a ") +
                     lp::to_string(sol.status) + " solution");
  }
  if (static_cast<int>(sol.primal.size()) != model.vars.size()) {
    throw StateError("solution does not match the model");
  }
  return Schedule(model, sol);
}

std::string row_family(const std::string& row_name) {
  // Names are "<family>_t<k>..." or, for community rows, "<family>_t<k>_s<j>".
  for (std::size_t p = 0; p + 2 < row_name.size(); ++p) {
    if (row_name[p] == '_' &&
        (row_name[p + 1] == 't' || row_name[p + 1] == 'b') &&
        std::isdigit(static_cast<unsigned char>(row_name[p + 2]))) {
      return row_name.substr(0, p);
    }
  }
  return row_name;
}

std::vector<FamilyReport> audit_point(const BuiltModel& model,
                                      const std::vector<double>& x,
                                      double tol) {
  std::map<std::string, FamilyReport> by_family;
  auto note = [&](const std::string& family, const std::string& what,
                  double viol) {
    FamilyReport& r = by_family[family];
    r.family = family;
    ++r.violated_rows;
    if (viol > r.max_violation) {
      r.max_violation = viol;
      r.worst_row = what;
    }
  };
  const lp::LinearProgram& lp = model.problem.lp;
  for (const lp::Row& row : lp.constraints) {
    const double act = lp::row_activity(row, x);
    double viol = 0.0;
    if (row.sense != Sense::kGe) viol = std::max(viol, act - row.rhs);
    if (row.sense != Sense::kLe) viol = std::max(viol, row.rhs - act);
    if (viol > tol) note(row_family(row.name), row.name, viol);
  }
  for (int c = 0; c < lp.num_vars(); ++c) {
    const lp::Bounds& bd = lp.var_bounds[c];
    const double viol = std::max(bd.lower - x[c], x[c] - bd.upper);
    if (viol > tol) {
      note(std::string("bounds:") + to_string(model.vars.key(c).role),
           lp.var_names[c], viol);
    }
  }
  std::vector<FamilyReport> out;
  for (auto& [name, r] : by_family) out.push_back(std::move(r));
  return out;
}

std::string format_attribution(const std::vector<FamilyReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << r.family << ": " << r.violated_rows << " violated, worst "
       << r.worst_row << " by " << r.max_violation << "\n";
  }
  return os.str();
}

lp::FeasTolerances model_tolerances() {
  lp::FeasTolerances tol;
  tol.feasibility = 1e-9;
  tol.optimality = 1e-9;
  return tol;
}

lp::Solution solve_model(const BuiltModel& model) {
  lp::Solution sol = lp::solve_milp(model.problem, model_tolerances());
  if (sol.status == lp::Status::kInfeasible) {
    throw InfeasibleError(model.dump_name + " is infeasible; violated at the "
                          "phase-1 point:\n" +
                          format_attribution(audit_point(model, sol.primal,
                                                         1e-7)));
  }
  if (sol.status == lp::Status::kUnbounded) {
    throw StateError(model.dump_name + " is unbounded");
  }
  return sol;
}

}  // namespace cems::model
