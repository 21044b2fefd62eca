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

// Column bookkeeping for the community models: every decision variable is
// identified by a role and its (time, building, zone, scenario) indices.

#ifndef CEMS_MODEL_VAR_MAP_HPP_
#define CEMS_MODEL_VAR_MAP_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cems::model {

enum class Role : std::uint8_t {
  kPIm,
  kPEx,
  kPCh,
  kPDis,
  kE,
  kPH,
  kREUp,
  kREDn,
  kRHUp,
  kRHDn,
  kRChUp,
  kRChDn,
  kRDisUp,
  kRDisDn,
  kRUp,
  kRDn,
  kZCh,
  kZDis,
  kSigma,
  kTIn,
  kGIm,
  kGEx,
  kSlack,
};

inline constexpr int kNumRoles = static_cast<int>(Role::kSlack) + 1;

const char* to_string(Role role);

// Which row an elastic slack column relaxes.
enum class SlackKind : std::int8_t {
  kNone = -1,
  kBalanceShort,   // missing supply
  kBalanceSurplus,
  kHeadroomLow,    // e - r_e_dn >= E_min
  kHeadroomHigh,   // e + r_e_up <= E_max
  kEssReserveDn,   // SoC ceiling after full down deployment
  kEssReserveUp,   // SoC floor after full up deployment
  kThermalUp,      // temperature ceiling after full up deployment
  kThermalDn,      // temperature floor after full down deployment
  kTerminalShort,  // day-end SoC below the boundary value
  kTerminalSurplus,
  kSocLow,         // SoC corridor, Level 2 only
  kSocHigh,
  kTempLow,        // comfort corridor, Level 2 only
  kTempHigh,
};

const char* to_string(SlackKind kind);

// Unused indices are -1. Community-level columns (g_im, g_ex) have b = -1.
struct VarKey {
  Role role = Role::kPIm;
  int t = -1;
  int b = -1;
  int i = -1;
  int s = -1;
  SlackKind slack = SlackKind::kNone;

  auto operator<=>(const VarKey&) const = default;
};

// Column name such as "p_im_t3_b0" or "slack_balance_short_t3_b0_s1".
std::string var_name(const VarKey& key);

class VarMap {
 public:
  // Registers the next column. Throws InputError on a duplicate key.
  int add(const VarKey& key);

  std::optional<int> find(const VarKey& key) const;
  // Throws StateError when absent.
  int at(const VarKey& key) const;
  const VarKey& key(int column) const { return keys_.at(column); }
  int size() const { return static_cast<int>(keys_.size()); }
  bool has_role(Role role) const;

 private:
  std::map<VarKey, int> index_;
  std::vector<VarKey> keys_;
};

}  // namespace cems::model

#endif  // CEMS_MODEL_VAR_MAP_HPP_
