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

#include "cems/cli/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "cems/control/control.hpp"
#include "cems/error.hpp"
#include "cems/format.hpp"
#include "cems/io/config_io.hpp"
#include "cems/io/csv.hpp"
#include "cems/io/dataset.hpp"
#include "cems/io/reports.hpp"
#include "cems/scenario/scenario.hpp"

namespace cems::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kBundledId = "bundled-v1";
constexpr const char* kSnapshot = "config/config.json";

}  // namespace

std::string write_manifest_json(const RunManifest& m) {
  json doc = json::object();
  doc["command"] = m.command;
  doc["config_path"] = m.config_path;
  doc["config_snapshot"] = kSnapshot;
  doc["dataset_id"] = m.dataset_id;
  doc["mode"] = m.mode;
  doc["seed"] = m.seed;
  doc["out_dir"] = m.out_dir;
  doc["scenarios"] = m.scenarios;
  doc["smpc_horizon"] = m.smpc_horizon;
  doc["tolerances"] = {{"feasibility", m.feasibility_tol},
                       {"optimality", m.optimality_tol}};
  return doc.dump(2) + "\n";
}

RunManifest read_manifest_json(const std::string& text,
                               const std::string& source) {
  RunManifest m;
  try {
    json doc = json::parse(text);
    m.command = doc.at("command").get<std::string>();
    m.config_path = doc.at("config_path").get<std::string>();
    m.dataset_id = doc.at("dataset_id").get<std::string>();
    m.mode = doc.at("mode").get<std::string>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.out_dir = doc.at("out_dir").get<std::string>();
    m.scenarios = doc.at("scenarios").get<int>();
    m.smpc_horizon = doc.at("smpc_horizon").get<int>();
    m.feasibility_tol = doc.at("tolerances").at("feasibility").get<double>();
    m.optimality_tol = doc.at("tolerances").at("optimality").get<double>();
  } catch (const json::exception& e) {
    throw InputError(source + ": bad manifest (" + e.what() + ")");
  }
  return m;
}

CommunityConfig resolve_config(const RunManifest& m) {
  CommunityConfig cfg = m.config_path == "bundled"
                            ? io::bundled_config()
                            : io::load_config(m.config_path);
  if (m.smpc_horizon > 0) cfg.time.smpc_horizon_N = m.smpc_horizon;
  return cfg;
}

namespace {

struct Globals {
  std::string config = "bundled";
  std::uint64_t seed = 0;
  std::string mode = "cems";
  std::string out;
  bool force = false;
  int scenarios = 10;
  int smpc_horizon = 0;
  std::string manifest;  // replay a previous run
};

model::Mode mode_of(const std::string& name) {
  return name == "bems" ? model::Mode::bems(0) : model::Mode::cems();
}

// The output directory must be new or empty unless --force; with --force
// existing files of the same name are overwritten and others left alone.
void prepare_out_dir(const std::string& dir, bool force) {
  if (dir.empty()) throw InputError("--out is required");
  std::error_code ec;
  if (fs::exists(dir, ec)) {
    if (!fs::is_directory(dir, ec)) {
      throw InputError(dir + ": exists and is not a directory");
    }
    if (!fs::is_empty(dir, ec) && !force) {
      throw InputError(dir + ": output directory is not empty (use --force)");
    }
  }
  fs::create_directories(dir, ec);
  if (ec) throw InputError(dir + ": cannot create (" + ec.message() + ")");
}

void put(const std::string& dir, const std::string& name,
         const std::string& text) {
  io::write_text_file((fs::path(dir) / name).string(), text);
}

RunManifest manifest_from(const Globals& g, const std::string& command) {
  RunManifest m;
  if (!g.manifest.empty()) {
    m = read_manifest_json(io::read_text_file(g.manifest), g.manifest);
    // The snapshot beside the manifest is the exact config of that run.
    m.config_path =
        (fs::path(g.manifest).parent_path() / kSnapshot).string();
    m.out_dir = g.out;
    if (m.command != command) {
      throw InputError(g.manifest + ": manifest is for '" + m.command +
                       "', not '" + command + "'");
    }
    return m;
  }
  m.command = command;
  m.config_path = g.config;
  m.dataset_id = g.config == "bundled"
                     ? kBundledId
                     : "file:" + fs::path(g.config).filename().string();
  m.mode = g.mode;
  m.seed = g.seed;
  m.out_dir = g.out;
  m.scenarios = g.scenarios;
  m.smpc_horizon = g.smpc_horizon;
  const lp::FeasTolerances tol = model::model_tolerances();
  m.feasibility_tol = tol.feasibility;
  m.optimality_tol = tol.optimality;
  return m;
}

// Loads and validates the config, prepares the output directory and
// records the manifest plus a config snapshot in it.
CommunityConfig start_run(const RunManifest& m, bool force) {
  CommunityConfig cfg = resolve_config(m);
  const auto v = validate_config(cfg);
  if (!v.empty()) {
    std::string msg = "invalid config";
    for (const Violation& x : v) msg += "\n  " + x.path + ": " + x.message;
    throw InputError(msg);
  }
  if (m.scenarios < 1) throw InputError("--scenarios must be at least 1");
  prepare_out_dir(m.out_dir, force);
  io::save_config(cfg, (fs::path(m.out_dir) / "config").string());
  put(m.out_dir, "manifest.json", write_manifest_json(m));
  return cfg;
}

scenario::CovModel cov_for(const RunManifest& m) {
  scenario::CovModel cov;
  cov.seed = m.seed;
  return cov;
}

int cmd_level1(const RunManifest& m, bool force, std::ostream& out) {
  const CommunityConfig cfg = start_run(m, force);
  const scenario::ScenarioSet day = scenario::generate_day_ahead(
      cfg.exogenous, cov_for(m), m.scenarios, cfg.time.step_hours);
  const control::DayAheadPlan plan =
      control::run_level1(cfg, day, mode_of(m.mode));
  put(m.out_dir, "plan.csv", io::write_plan_csv(plan));
  put(m.out_dir, "commitment.csv", io::write_commitment_csv(plan.commitment));
  put(m.out_dir, "objective.txt", format_double(plan.objective_value) + "\n");
  out << "level1 " << m.mode << " objective " << plan.objective_value
      << " committed " << plan.commitment.total() << " kW\n";
  return kOk;
}

int cmd_simulate(const RunManifest& m, bool force, std::ostream& out) {
  const CommunityConfig cfg = start_run(m, force);
  control::SimOptions opt;
  opt.seed = m.seed;
  opt.mode = mode_of(m.mode);
  opt.num_scenarios = m.scenarios;
  const control::ClosedLoopTrace trace = control::simulate_day(cfg, opt);
  const control::Summary s = control::compute_metrics(trace);
  put(m.out_dir, "trace.csv", io::write_trace_csv(trace.rows));
  put(m.out_dir, "summary.json", io::write_summary_json(s));
  put(m.out_dir, "commitment.csv", io::write_commitment_csv(trace.commitment));
  std::string warn;
  for (const std::string& w : trace.warnings) warn += w + "\n";
  put(m.out_dir, "warnings.txt", warn);
  for (const io::FigureTable& f : io::figure_tables(trace.rows, trace.horizon)) {
    put(m.out_dir, f.file_name, f.csv);
  }
  out << "simulate " << m.mode << " cost " << s.total_cost << " ffr "
      << s.ffr_committed_kwh << " kWh net " << s.cumulative_net_demand_kwh
      << " kWh\n";
  return kOk;
}

control::Summary summary_in(const std::string& dir) {
  const std::string path = (fs::path(dir) / "summary.json").string();
  return io::read_summary_json(io::read_text_file(path), path);
}

int cmd_compare(const std::string& a, const std::string& b, const Globals& g,
                std::ostream& out) {
  const auto deltas = io::compare_summaries(summary_in(a), summary_in(b));
  out << "metric,a,b,delta_percent\n";
  for (const io::Delta& d : deltas) {
    char pct[32];
    std::snprintf(pct, sizeof pct, "%+.2f%%", d.percent);
    out << d.metric << "," << d.a << "," << d.b << "," << pct << "\n";
  }
  if (!g.out.empty()) {
    prepare_out_dir(g.out, g.force);
    put(g.out, "comparison.csv", io::write_comparison_csv(deltas));
  }
  return kOk;
}

int cmd_validate(const Globals& g, std::ostream& out, std::ostream& err) {
  RunManifest m = manifest_from(g, "validate");
  const CommunityConfig cfg = resolve_config(m);
  const auto v = validate_config(cfg);
  for (const Violation& x : v) err << x.path << ": " << x.message << "\n";
  if (!v.empty()) return kInputError;
  out << m.config_path << ": ok\n";
  return kOk;
}

int cmd_dataset(const Globals& g, std::ostream& out) {
  prepare_out_dir(g.out, g.force);
  io::save_config(io::bundled_config(), g.out);
  out << "wrote bundled dataset to " << g.out << "\n";
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Community energy management: day-ahead reserve commitment, "
               "stochastic MPC and real-time dispatch"};
  app.name("cems");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "Config JSON, or 'bundled'");
  app.add_option("--seed", g.seed, "Seed for every random stream");
  app.add_option("--mode", g.mode, "Control architecture")
      ->check(CLI::IsMember({"cems", "bems"}));
  app.add_option("--out", g.out, "Output directory");
  app.add_flag("--force", g.force, "Write into a non-empty output directory");
  app.add_option("--scenarios", g.scenarios, "PV scenarios per solve");
  app.add_option("--smpc-horizon", g.smpc_horizon,
                 "Level-2 look-ahead in steps (default: config)");

  CLI::App* level1 = app.add_subcommand("level1", "Day-ahead commitment");
  level1->add_option("--manifest", g.manifest, "Repeat a recorded run");
  CLI::App* simulate = app.add_subcommand("simulate", "Closed-loop day");
  simulate->add_option("--manifest", g.manifest, "Repeat a recorded run");
  std::string run_a, run_b;
  CLI::App* compare = app.add_subcommand("compare", "Relative deltas a vs b");
  compare->add_option("run_a", run_a, "Run directory")->required();
  compare->add_option("run_b", run_b, "Baseline run directory")->required();
  CLI::App* validate = app.add_subcommand("validate", "Check a config");
  CLI::App* dataset =
      app.add_subcommand("dataset", "Write the bundled dataset files");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*level1) return cmd_level1(manifest_from(g, "level1"), g.force, out);
    if (*simulate) {
      return cmd_simulate(manifest_from(g, "simulate"), g.force, out);
    }
    if (*compare) return cmd_compare(run_a, run_b, g, out);
    if (*validate) return cmd_validate(g, out, err);
    if (*dataset) return cmd_dataset(g, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const StateError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    if (!g.out.empty() && fs::is_directory(g.out)) {
      put(g.out, "infeasibility.txt", std::string(e.what()) + "\n");
    }
    return kInfeasible;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace cems::cli
