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

#include "cems/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cems/error.hpp"

namespace cems {

int TimeGrid::substeps_per_step() const {
  return static_cast<int>(std::lround(step_hours * 3600.0)) / rt_step_seconds;
}

const char* to_string(BuildingKind kind) {
  switch (kind) {
    case BuildingKind::kOffice:
      return "office";
    case BuildingKind::kResearch:
      return "research";
    case BuildingKind::kResidential:
      return "residential";
  }
  return "unknown";
}

std::optional<BuildingKind> parse_building_kind(const std::string& name) {
  if (name == "office") return BuildingKind::kOffice;
  if (name == "research") return BuildingKind::kResearch;
  if (name == "residential") return BuildingKind::kResidential;
  return std::nullopt;
}

double CommunityConfig::max_import_price() const {
  double m = 0.0;
  for (double p : prices.lambda_import) m = std::max(m, p);
  return m;
}

namespace {

class Collector {
 public:
  void add(std::string path, std::string message) {
    out_.push_back({std::move(path), std::move(message)});
  }
  void require(bool ok, const std::string& path, const std::string& message) {
    if (!ok) add(path, message);
  }
  std::vector<Violation> take() { return std::move(out_); }

 private:
  std::vector<Violation> out_;
};

std::string idx(const std::string& base, std::size_t i) {
  std::ostringstream os;
  os << base << "[" << i << "]";
  return os.str();
}

void check_series(Collector& c, const std::string& path,
                  const std::vector<double>& v, std::size_t expected,
                  bool nonnegative) {
  if (v.size() != expected) {
    std::ostringstream os;
    os << "length " << v.size() << " != " << expected;
    c.add(path, os.str());
    return;
  }
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (!std::isfinite(v[t])) {
      c.add(idx(path, t), "not finite");
    } else if (nonnegative && v[t] < 0.0) {
      c.add(idx(path, t), "negative value");
    }
  }
}

void check_time(Collector& c, const TimeGrid& g) {
  c.require(g.step_hours > 0.0, "time.step_hours", "must be positive");
  c.require(g.horizon_steps >= 1, "time.horizon_steps", "must be >= 1");
  if (g.step_hours > 0.0 && g.horizon_steps >= 1) {
    c.require(std::abs(g.step_hours * g.horizon_steps - 24.0) < 1e-9,
              "time", "step_hours * horizon_steps must equal 24 h");
  }
  c.require(g.rt_step_seconds >= 1, "time.rt_step_seconds", "must be >= 1");
  if (g.rt_step_seconds >= 1 && g.step_hours > 0.0) {
    const double step_s = g.step_hours * 3600.0;
    const long whole = std::lround(step_s);
    c.require(std::abs(step_s - static_cast<double>(whole)) < 1e-9 &&
                  whole % g.rt_step_seconds == 0,
              "time.rt_step_seconds", "must divide the planning step evenly");
  }
  c.require(g.smpc_horizon_N >= 1 && g.smpc_horizon_N <= g.horizon_steps,
            "time.smpc_horizon_N", "must lie in [1, horizon_steps]");
}

void check_zone(Collector& c, const std::string& p, const HvacZoneParams& z,
                double step_hours) {
  c.require(z.heat_capacity > 0.0, p + ".heat_capacity", "must be positive");
  c.require(z.thermal_resistance > 0.0, p + ".thermal_resistance",
            "must be positive");
  if (z.heat_capacity > 0.0 && z.thermal_resistance > 0.0) {
    const double decay = 1.0 - step_hours / (z.heat_capacity *
                                             z.thermal_resistance);
    c.require(decay > 0.0 && decay < 1.0, p,
              "unstable ETP discretization: C*R must exceed step_hours");
  }
  c.require(z.cop > 0.0, p + ".cop", "must be positive");
  c.require(z.p_h_max_kw > 0.0, p + ".p_h_max_kw", "must be positive");
  c.require(z.temp_min_c < z.temp_max_c, p + ".temp_bounds",
            "temp_min_c must be below temp_max_c");
  c.require(z.t_in_init_c >= z.temp_min_c && z.t_in_init_c <= z.temp_max_c,
            p + ".t_in_init_c", "initial temperature outside comfort bounds");
  c.require(z.comfort.a > 0.0, p + ".comfort.a",
            "must be positive (convex discomfort)");
}

void check_ess(Collector& c, const std::string& p, const EssParams& e) {
  c.require(e.capacity_kwh > 0.0, p + ".capacity_kwh", "must be positive");
  c.require(e.eta_ch > 0.0 && e.eta_ch <= 1.0, p + ".eta_ch",
            "must lie in (0, 1]");
  c.require(e.eta_dis > 0.0 && e.eta_dis <= 1.0, p + ".eta_dis",
            "must lie in (0, 1]");
  c.require(e.p_ch_max_kw >= 0.0, p + ".p_ch_max_kw", "negative");
  c.require(e.p_dis_max_kw >= 0.0, p + ".p_dis_max_kw", "negative");
  c.require(e.p_ch_min_kw >= 0.0 && e.p_ch_min_kw <= e.p_ch_max_kw,
            p + ".p_ch_min_kw", "must lie in [0, p_ch_max_kw]");
  c.require(e.p_dis_min_kw >= 0.0 && e.p_dis_min_kw <= e.p_dis_max_kw,
            p + ".p_dis_min_kw", "must lie in [0, p_dis_max_kw]");
  c.require(0.0 <= e.soc_min_frac && e.soc_min_frac < e.soc_boundary_frac &&
                e.soc_boundary_frac < e.soc_max_frac && e.soc_max_frac <= 1.0,
            p + ".soc_fracs",
            "need 0 <= soc_min < soc_boundary < soc_max <= 1");
  c.require(e.e_min_kwh >= e.soc_min_kwh() - 1e-9, p + ".e_min_kwh",
            "must be >= soc_min_frac * capacity");
  c.require(e.e_max_kwh <= e.soc_max_kwh() + 1e-9, p + ".e_max_kwh",
            "must be <= soc_max_frac * capacity");
  c.require(e.e_min_kwh < e.e_max_kwh, p + ".e_bounds",
            "e_min_kwh must be below e_max_kwh");
}

}  // namespace

std::vector<Violation> validate_config(const CommunityConfig& cfg) {
  Collector c;
  check_time(c, cfg.time);
  const auto T = static_cast<std::size_t>(std::max(cfg.time.horizon_steps, 0));
  c.require(cfg.comfort_cuts >= 2, "comfort_cuts", "must be >= 2");
  c.require(!cfg.buildings.empty(), "buildings", "at least one building");

  for (std::size_t b = 0; b < cfg.buildings.size(); ++b) {
    const BuildingConfig& bc = cfg.buildings[b];
    const std::string p = idx("buildings", b);
    c.require(!bc.id.empty(), p + ".id", "empty building id");
    for (std::size_t o = 0; o < b; ++o) {
      if (cfg.buildings[o].id == bc.id) c.add(p + ".id", "duplicate id");
    }
    for (std::size_t i = 0; i < bc.zones.size(); ++i) {
      check_zone(c, idx(p + ".zones", i), bc.zones[i], cfg.time.step_hours);
    }
    check_ess(c, p + ".ess", bc.ess);
    c.require(bc.pv.p_max_kw > 0.0, p + ".pv.p_max_kw", "must be positive");
    c.require(bc.pv.efficiency > 0.0 && bc.pv.efficiency <= 1.0,
              p + ".pv.efficiency", "must lie in (0, 1]");
    check_series(c, p + ".demand_load", bc.demand_load, T, true);
    check_series(c, p + ".demand_ev", bc.demand_ev, T, true);
  }

  const PriceSchedule& pr = cfg.prices;
  check_series(c, "prices.lambda_import", pr.lambda_import, T, true);
  check_series(c, "prices.lambda_export", pr.lambda_export, T, true);
  if (pr.lambda_import.size() == T && pr.lambda_export.size() == T) {
    for (std::size_t t = 0; t < T; ++t) {
      c.require(pr.lambda_export[t] <= pr.lambda_import[t],
                idx("prices.lambda_export", t),
                "export price exceeds import price");
    }
  }
  c.require(pr.lambda_comfort >= 0.0, "prices.lambda_comfort", "negative");
  c.require(pr.lambda_ffr >= 0.0, "prices.lambda_ffr", "negative");

  const ExogenousData& ex = cfg.exogenous;
  check_series(c, "exogenous.t_out", ex.t_out, T, false);
  check_series(c, "exogenous.clear_sky_irr", ex.clear_sky_irr, T, true);
  if (!ex.truth_irradiance.empty()) {
    check_series(c, "exogenous.truth_irradiance", ex.truth_irradiance, T,
                 true);
  }
  if (!ex.reg_signal.empty()) {
    const std::size_t n_rt =
        T * static_cast<std::size_t>(std::max(cfg.time.substeps_per_step(), 0));
    if (cfg.time.rt_step_seconds >= 1) {
      check_series(c, "exogenous.reg_signal", ex.reg_signal, n_rt, false);
    }
    for (std::size_t n = 0; n < ex.reg_signal.size(); ++n) {
      if (std::abs(ex.reg_signal[n]) > 1.0) {
        c.add(idx("exogenous.reg_signal", n), "|w| exceeds 1");
        break;
      }
    }
  }
  return c.take();
}

double pv_output(const PvParams& pv, double irradiance_wm2) {
  if (!(irradiance_wm2 >= 0.0)) {
    throw InputError("pv_output: irradiance must be non-negative");
  }
  return pv.p_max_kw * (irradiance_wm2 / PvParams::kReferenceIrradiance) *
         pv.efficiency;
}

double comfort_sigma(const ComfortCoeffs& k, double t) {
  return k.a * t * t + k.b * t + k.c;
}

double etp_step(const HvacZoneParams& zone, double step_hours, double t_in,
                double t_out, double p_h_kw) {
  const double a = step_hours / (zone.heat_capacity * zone.thermal_resistance);
  return (1.0 - a) * t_in + a * t_out - etp_power_gain(zone, step_hours) *
                                            p_h_kw;
}

double etp_power_gain(const HvacZoneParams& zone, double step_hours) {
  return step_hours * zone.cop / zone.heat_capacity;
}

}  // namespace cems
