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

// Community configuration on disk: one JSON document with sections time,
// buildings, prices and exogenous, plus CSV series referenced by path
// (relative paths resolve against the JSON file's directory).

#ifndef CEMS_IO_CONFIG_IO_HPP_
#define CEMS_IO_CONFIG_IO_HPP_

#include <string>

#include "cems/domain.hpp"

namespace cems::io {

// Throws InputError naming the file (and line, for parse errors) when a
// document or series is missing or malformed. Does not run validate_config.
CommunityConfig load_config(const std::string& json_path);

// Writes config.json and its series files into `dir` (created if needed).
// load_config(dir + "/config.json") reproduces `cfg` exactly.
void save_config(const CommunityConfig& cfg, const std::string& dir);

}  // namespace cems::io

#endif  // CEMS_IO_CONFIG_IO_HPP_
