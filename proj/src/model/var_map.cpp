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

#include "cems/model/var_map.hpp"

#include "cems/error.hpp"

namespace cems::model {

const char* to_string(Role role) {
  switch (role) {
    case Role::kPIm: return "p_im";
    case Role::kPEx: return "p_ex";
    case Role::kPCh: return "p_ch";
    case Role::kPDis: return "p_dis";
    case Role::kE: return "e";
    case Role::kPH: return "p_h";
    case Role::kREUp: return "r_e_up";
    case Role::kREDn: return "r_e_dn";
    case Role::kRHUp: return "r_h_up";
    case Role::kRHDn: return "r_h_dn";
    case Role::kRChUp: return "r_ch_up";
    case Role::kRChDn: return "r_ch_dn";
    case Role::kRDisUp: return "r_dis_up";
    case Role::kRDisDn: return "r_dis_dn";
    case Role::kRUp: return "r_up";
    case Role::kRDn: return "r_dn";
    case Role::kZCh: return "z_ch";
    case Role::kZDis: return "z_dis";
    case Role::kSigma: return "sigma";
    case Role::kTIn: return "t_in";
    case Role::kGIm: return "g_im";
    case Role::kGEx: return "g_ex";
    case Role::kSlack: return "slack";
  }
  return "unknown";
}

const char* to_string(SlackKind kind) {
  switch (kind) {
    case SlackKind::kNone: return "none";
    case SlackKind::kBalanceShort: return "balance_short";
    case SlackKind::kBalanceSurplus: return "balance_surplus";
    case SlackKind::kHeadroomLow: return "headroom_low";
    case SlackKind::kHeadroomHigh: return "headroom_high";
    case SlackKind::kEssReserveDn: return "ess_reserve_dn";
    case SlackKind::kEssReserveUp: return "ess_reserve_up";
    case SlackKind::kThermalUp: return "thermal_up";
    case SlackKind::kThermalDn: return "thermal_dn";
    case SlackKind::kTerminalShort: return "terminal_short";
    case SlackKind::kTerminalSurplus: return "terminal_surplus";
    case SlackKind::kSocLow: return "soc_low";
    case SlackKind::kSocHigh: return "soc_high";
    case SlackKind::kTempLow: return "temp_low";
    case SlackKind::kTempHigh: return "temp_high";
  }
  return "unknown";
}

std::string var_name(const VarKey& key) {
  std::string out = to_string(key.role);
  if (key.role == Role::kSlack) {
    out += "_";
    out += to_string(key.slack);
  }
  if (key.t >= 0) out += "_t" + std::to_string(key.t);
  if (key.b >= 0) out += "_b" + std::to_string(key.b);
  if (key.i >= 0) out += "_i" + std::to_string(key.i);
  if (key.s >= 0) out += "_s" + std::to_string(key.s);
  return out;
}

int VarMap::add(const VarKey& key) {
  const int col = size();
  auto [it, inserted] = index_.emplace(key, col);
  if (!inserted) throw InputError("duplicate column " + var_name(key));
  keys_.push_back(key);
  return col;
}

std::optional<int> VarMap::find(const VarKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int VarMap::at(const VarKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) throw StateError("no column " + var_name(key));
  return it->second;
}

bool VarMap::has_role(Role role) const {
  auto it = index_.lower_bound(VarKey{role, -1, -1, -1, -1, SlackKind::kNone});
  return it != index_.end() && it->first.role == role;
}

}  // namespace cems::model
