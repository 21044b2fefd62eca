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

// Desk-scale synthetic community shipped with the tool: three buildings
// (office, research, residential), one HVAC zone and a 1 MWh battery each,
// 10 MW of PV split 4/4/2, a synthetic time-of-use tariff and a RegD-style
// regulation signal.

#ifndef CEMS_IO_DATASET_HPP_
#define CEMS_IO_DATASET_HPP_

#include <cstdint>
#include <vector>

#include "cems/domain.hpp"

namespace cems::io {

CommunityConfig bundled_config();

// Triangle wave with a 10 minute period, scaled by 0.6, plus Gaussian
// noise, clipped to [-1, 1]. One value per real-time substep.
std::vector<double> regd_signal(const TimeGrid& grid, std::uint64_t seed);

}  // namespace cems::io

#endif  // CEMS_IO_DATASET_HPP_
