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

#include "cwm/game_spec.h"

#include <algorithm>
#include <stdexcept>

namespace cwm {

std::string_view InfoKindName(InfoKind kind) {
  return kind == InfoKind::kPerfect ? "perfect" : "imperfect";
}

void GameSpec::Validate() const {
  if (n_players < 1) throw std::invalid_argument("n_players must be >= 1");
  if (max_walk_steps < 1) {
    throw std::invalid_argument("max_walk_steps must be >= 1");
  }
}

bool IsChanceNode(const GameSpec& spec, PlayerId current_player,
                  const std::vector<ActionId>& legal_actions) {
  if (current_player == kChancePlayer) return true;
  if (legal_actions.empty() || spec.chance_action_prefixes.empty()) {
    return false;
  }
  return std::all_of(
      legal_actions.begin(), legal_actions.end(), [&](const ActionId& a) {
        return std::any_of(spec.chance_action_prefixes.begin(),
                           spec.chance_action_prefixes.end(),
                           [&](const std::string& prefix) {
                             return a.starts_with(prefix);
                           });
      });
}

}  // namespace cwm
