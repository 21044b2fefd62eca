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

#include "cems/io/config_io.hpp"

#include <algorithm>
#include <filesystem>
#include <json.hpp>

#include "cems/error.hpp"
#include "cems/io/csv.hpp"

namespace cems::io {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Field access with errors that name the file and the JSON path.
class Reader {
 public:
  explicit Reader(std::string file) : file_(std::move(file)) {}

  const json& at(const json& obj, const std::string& key,
                 const std::string& path) const {
    if (!obj.is_object() || !obj.contains(key)) {
      throw InputError(file_ + ": missing field " + path + "/" + key);
    }
    return obj.at(key);
  }
  double num(const json& obj, const std::string& key,
             const std::string& path) const {
    const json& v = at(obj, key, path);
    if (!v.is_number()) {
      throw InputError(file_ + ": " + path + "/" + key + " is not a number");
    }
    return v.get<double>();
  }
  double num_or(const json& obj, const std::string& key,
                const std::string& path, double fallback) const {
    return obj.contains(key) ? num(obj, key, path) : fallback;
  }
  int integer(const json& obj, const std::string& key,
              const std::string& path) const {
    const json& v = at(obj, key, path);
    if (!v.is_number_integer()) {
      throw InputError(file_ + ": " + path + "/" + key +
                       " is not an integer");
    }
    return v.get<int>();
  }
  std::string str(const json& obj, const std::string& key,
                  const std::string& path) const {
    const json& v = at(obj, key, path);
    if (!v.is_string()) {
      throw InputError(file_ + ": " + path + "/" + key + " is not a string");
    }
    return v.get<std::string>();
  }

 private:
  std::string file_;
};

int line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(),
                                         text.begin() + static_cast<long>(byte),
                                         '\n'));
}

}  // namespace

CommunityConfig load_config(const std::string& json_path) {
  const std::string text = read_text_file(json_path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(json_path + ":" + std::to_string(line_of(text, e.byte)) +
                     ": invalid JSON");
  }
  const fs::path base = fs::path(json_path).parent_path();
  auto series_path = [&](const std::string& p) {
    fs::path sp(p);
    return (sp.is_absolute() ? sp : base / sp).string();
  };
  Reader rd(json_path);
  CommunityConfig cfg;

  const json& time = rd.at(doc, "time", "");
  cfg.time.step_hours = rd.num(time, "step_hours", "/time");
  cfg.time.horizon_steps = rd.integer(time, "horizon_steps", "/time");
  cfg.time.rt_step_seconds = rd.integer(time, "rt_step_seconds", "/time");
  cfg.time.smpc_horizon_N = rd.integer(time, "smpc_horizon_N", "/time");
  if (doc.contains("comfort_cuts")) {
    cfg.comfort_cuts = rd.integer(doc, "comfort_cuts", "");
  }
  const int T = cfg.time.horizon_steps;
  if (T <= 0) throw InputError(json_path + ": /time/horizon_steps must be > 0");

  const json& blds = rd.at(doc, "buildings", "");
  if (!blds.is_array() || blds.empty()) {
    throw InputError(json_path + ": /buildings must be a non-empty array");
  }
  for (std::size_t b = 0; b < blds.size(); ++b) {
    const json& jb = blds[b];
    const std::string p = "/buildings/" + std::to_string(b);
    BuildingConfig bc;
    bc.id = rd.str(jb, "id", p);
    const std::string kind = rd.str(jb, "kind", p);
    auto k = parse_building_kind(kind);
    if (!k) throw InputError(json_path + ": " + p + "/kind '" + kind +
                             "' is not office, research or residential");
    bc.kind = *k;
    const json& pv = rd.at(jb, "pv", p);
    bc.pv.p_max_kw = rd.num(pv, "p_max_kw", p + "/pv");
    bc.pv.efficiency = rd.num(pv, "efficiency", p + "/pv");

    const json& je = rd.at(jb, "ess", p);
    const std::string pe = p + "/ess";
    EssParams& e = bc.ess;
    e.capacity_kwh = rd.num(je, "capacity_kwh", pe);
    e.eta_ch = rd.num(je, "eta_ch", pe);
    e.eta_dis = rd.num(je, "eta_dis", pe);
    e.p_ch_max_kw = rd.num(je, "p_ch_max_kw", pe);
    e.p_dis_max_kw = rd.num(je, "p_dis_max_kw", pe);
    e.p_ch_min_kw = rd.num_or(je, "p_ch_min_kw", pe, 0.0);
    e.p_dis_min_kw = rd.num_or(je, "p_dis_min_kw", pe, 0.0);
    e.soc_min_frac = rd.num_or(je, "soc_min_frac", pe, e.soc_min_frac);
    e.soc_max_frac = rd.num_or(je, "soc_max_frac", pe, e.soc_max_frac);
    e.soc_boundary_frac =
        rd.num_or(je, "soc_boundary_frac", pe, e.soc_boundary_frac);
    e.e_min_kwh = rd.num(je, "e_min_kwh", pe);
    e.e_max_kwh = rd.num(je, "e_max_kwh", pe);

    const json& zones = rd.at(jb, "zones", p);
    if (!zones.is_array()) {
      throw InputError(json_path + ": " + p + "/zones must be an array");
    }
    for (std::size_t i = 0; i < zones.size(); ++i) {
      const json& jz = zones[i];
      const std::string pz = p + "/zones/" + std::to_string(i);
      HvacZoneParams z;
      z.name = rd.str(jz, "name", pz);
      z.heat_capacity = rd.num(jz, "heat_capacity", pz);
      z.thermal_resistance = rd.num(jz, "thermal_resistance", pz);
      z.cop = rd.num(jz, "cop", pz);
      z.p_h_max_kw = rd.num(jz, "p_h_max_kw", pz);
      z.temp_min_c = rd.num(jz, "temp_min_c", pz);
      z.temp_max_c = rd.num(jz, "temp_max_c", pz);
      z.t_in_init_c = rd.num(jz, "t_in_init_c", pz);
      if (jz.contains("comfort")) {
        const json& jc = jz.at("comfort");
        z.comfort.a = rd.num(jc, "a", pz + "/comfort");
        z.comfort.b = rd.num(jc, "b", pz + "/comfort");
        z.comfort.c = rd.num(jc, "c", pz + "/comfort");
      }
      bc.zones.push_back(z);
    }
    cfg.buildings.push_back(std::move(bc));
  }
  const int nb = static_cast<int>(cfg.buildings.size());

  auto series = [&](const json& obj, const std::string& key,
                    const std::string& path, int n) {
    const std::string f = series_path(rd.str(obj, key, path));
    return read_series_csv(read_text_file(f), f, n);
  };
  const json& dem = rd.at(doc, "demand", "");
  for (const char* key : {"load", "ev"}) {
    const std::string f = series_path(rd.str(dem, key, "/demand"));
    auto by_b = read_building_series_csv(read_text_file(f), f, nb, T);
    for (int b = 0; b < nb; ++b) {
      (std::string(key) == "load" ? cfg.buildings[b].demand_load
                                  : cfg.buildings[b].demand_ev) = by_b[b];
    }
  }

  const json& pr = rd.at(doc, "prices", "");
  cfg.prices.lambda_import = series(pr, "lambda_import", "/prices", T);
  cfg.prices.lambda_export = series(pr, "lambda_export", "/prices", T);
  cfg.prices.lambda_comfort = rd.num(pr, "lambda_comfort", "/prices");
  cfg.prices.lambda_ffr = rd.num(pr, "lambda_ffr", "/prices");

  const json& ex = rd.at(doc, "exogenous", "");
  cfg.exogenous.t_out = series(ex, "t_out", "/exogenous", T);
  cfg.exogenous.clear_sky_irr = series(ex, "clear_sky_irr", "/exogenous", T);
  if (ex.contains("reg_signal")) {
    cfg.exogenous.reg_signal = series(ex, "reg_signal", "/exogenous", -1);
  }
  if (ex.contains("truth_irradiance")) {
    cfg.exogenous.truth_irradiance =
        series(ex, "truth_irradiance", "/exogenous", T);
  }
  return cfg;
}

void save_config(const CommunityConfig& cfg, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError(dir + ": cannot create directory");
  const fs::path d(dir);
  auto put = [&](const std::string& name, const std::string& text) {
    write_text_file((d / name).string(), text);
    return name;
  };

  json doc;
  doc["time"] = {{"step_hours", cfg.time.step_hours},
                 {"horizon_steps", cfg.time.horizon_steps},
                 {"rt_step_seconds", cfg.time.rt_step_seconds},
                 {"smpc_horizon_N", cfg.time.smpc_horizon_N}};
  doc["comfort_cuts"] = cfg.comfort_cuts;
  json blds = json::array();
  std::vector<std::vector<double>> load, ev;
  for (const BuildingConfig& bc : cfg.buildings) {
    json jb;
    jb["id"] = bc.id;
    jb["kind"] = to_string(bc.kind);
    jb["pv"] = {{"p_max_kw", bc.pv.p_max_kw},
                {"efficiency", bc.pv.efficiency}};
    const EssParams& e = bc.ess;
    jb["ess"] = {{"capacity_kwh", e.capacity_kwh},
                 {"eta_ch", e.eta_ch},
                 {"eta_dis", e.eta_dis},
                 {"p_ch_max_kw", e.p_ch_max_kw},
                 {"p_dis_max_kw", e.p_dis_max_kw},
                 {"p_ch_min_kw", e.p_ch_min_kw},
                 {"p_dis_min_kw", e.p_dis_min_kw},
                 {"soc_min_frac", e.soc_min_frac},
                 {"soc_max_frac", e.soc_max_frac},
                 {"soc_boundary_frac", e.soc_boundary_frac},
                 {"e_min_kwh", e.e_min_kwh},
                 {"e_max_kwh", e.e_max_kwh}};
    json zones = json::array();
    for (const HvacZoneParams& z : bc.zones) {
      zones.push_back({{"name", z.name},
                       {"heat_capacity", z.heat_capacity},
                       {"thermal_resistance", z.thermal_resistance},
                       {"cop", z.cop},
                       {"p_h_max_kw", z.p_h_max_kw},
                       {"temp_min_c", z.temp_min_c},
                       {"temp_max_c", z.temp_max_c},
                       {"t_in_init_c", z.t_in_init_c},
                       {"comfort",
                        {{"a", z.comfort.a},
                         {"b", z.comfort.b},
                         {"c", z.comfort.c}}}});
    }
    jb["zones"] = zones;
    blds.push_back(jb);
    load.push_back(bc.demand_load);
    ev.push_back(bc.demand_ev);
  }
  doc["buildings"] = blds;
  doc["demand"] = {
      {"load", put("demand_load.csv", write_building_series_csv(load))},
      {"ev", put("demand_ev.csv", write_building_series_csv(ev))}};
  doc["prices"] = {
      {"lambda_import", put("lambda_import.csv",
                            write_series_csv(cfg.prices.lambda_import))},
      {"lambda_export", put("lambda_export.csv",
                            write_series_csv(cfg.prices.lambda_export))},
      {"lambda_comfort", cfg.prices.lambda_comfort},
      {"lambda_ffr", cfg.prices.lambda_ffr}};
  json ex = {
      {"t_out", put("t_out.csv", write_series_csv(cfg.exogenous.t_out))},
      {"clear_sky_irr", put("clear_sky_irr.csv",
                            write_series_csv(cfg.exogenous.clear_sky_irr))}};
  if (!cfg.exogenous.reg_signal.empty()) {
    ex["reg_signal"] =
        put("reg_signal.csv", write_series_csv(cfg.exogenous.reg_signal));
  }
  if (!cfg.exogenous.truth_irradiance.empty()) {
    ex["truth_irradiance"] =
        put("truth_irradiance.csv",
            write_series_csv(cfg.exogenous.truth_irradiance));
  }
  doc["exogenous"] = ex;
  put("config.json", doc.dump(2) + "\n");
}

}  // namespace cems::io
