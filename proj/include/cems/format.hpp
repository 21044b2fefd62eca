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

#ifndef CEMS_FORMAT_HPP_
#define CEMS_FORMAT_HPP_

#include <optional>
#include <string>
#include <string_view>

namespace cems {

// Shortest decimal text that parses back to the identical double.
// Infinities print as "inf" / "-inf".
std::string format_double(double v);

// Inverse of format_double; nullopt unless the whole token is consumed.
std::optional<double> parse_double(std::string_view s);

}  // namespace cems

#endif  // CEMS_FORMAT_HPP_
