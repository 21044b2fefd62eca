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

// Command-line front end. run_cli is the whole program minus process setup
// so tests can drive it in-process.

#ifndef CEMS_CLI_CLI_HPP_
#define CEMS_CLI_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cems/domain.hpp"

namespace cems::cli {

enum ExitCode { kOk = 0, kInputError = 1, kInfeasible = 2, kResourceLimit = 3 };

// Everything needed to repeat a run. Written as manifest.json next to the
// outputs; the config it names is the snapshot under config/.
struct RunManifest {
  std::string command;      // level1 | simulate
  std::string config_path;  // as given, or "bundled"
  std::string dataset_id;
  std::string mode = "cems";
  std::uint64_t seed = 0;
  std::string out_dir;
  int scenarios = 10;
  int smpc_horizon = 0;  // 0 keeps the config value
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-7;

  bool operator==(const RunManifest&) const = default;
};

std::string write_manifest_json(const RunManifest& m);
RunManifest read_manifest_json(const std::string& text,
                               const std::string& source);

// Loads the manifest's config (bundled or from disk) and applies its
// overrides.
CommunityConfig resolve_config(const RunManifest& m);

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace cems::cli

#endif  // CEMS_CLI_CLI_HPP_
