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

// LP-file style text dump of an optimization instance. Every number is
// written in shortest round-trip form so a dump parses back bit-exactly.

#ifndef CEMS_LP_LP_FORMAT_HPP_
#define CEMS_LP_LP_FORMAT_HPP_

#include <string>
#include <string_view>

#include "cems/lp/linear_program.hpp"

namespace cems::lp {

std::string write_lp_format(const MilpProblem& p);

// Throws InputError naming the offending line.
MilpProblem read_lp_format(std::string_view text);

}  // namespace cems::lp

#endif  // CEMS_LP_LP_FORMAT_HPP_
