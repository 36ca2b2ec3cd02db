// Copyright 2026 The cwm-verify Authors.
//
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

#ifndef CWM_TIER_STATIC_H_
#define CWM_TIER_STATIC_H_

#include <array>
#include <string_view>

#include "cwm/session.h"
#include "cwm/tier_report.h"

namespace cwm {

inline constexpr std::array<std::string_view, 7> kStaticChecks = {
    "syntax_ok",
    "api_complete",
    "initial_is_map",
    "legal_actions_is_string_list",
    "rewards_is_number_list",
    "observations_is_list",
    "current_player_is_int",
};

// Tier 1: seven shape checks with cascading aborts.
//   syntax_ok, api_complete, initial_is_map, legal_actions_is_string_list,
//   rewards_is_number_list, observations_is_list, current_player_is_int
// An incomplete API fails the remaining five; a missing initial state fails
// the remaining four.
TierReport RunStatic(Session& session);

// syntax_ok && api_complete && initial_is_map.
bool StaticGate(const TierReport& report);

}  // namespace cwm

#endif  // CWM_TIER_STATIC_H_
