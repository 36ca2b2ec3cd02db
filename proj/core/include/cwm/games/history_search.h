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

#ifndef CWM_GAMES_HISTORY_SEARCH_H_
#define CWM_GAMES_HISTORY_SEARCH_H_

#include <string_view>
#include <vector>

#include "cwm/program.h"
#include "cwm/rng.h"

namespace cwm::games {

// Python rendering of SearchConsistentHistory, reported as the reference
// programs' resample_history source.
extern const std::string_view kReferenceResamplerSource;

// Depth-first search over `program`'s own game tree for an action sequence,
// chance outcomes included, whose replay reproduces every entry of
// `history` for `player`: at each of the player's turns the observation
// matches and the recorded action is taken; the final entry (null action)
// matches the end state's observation. Non-player branches are explored in
// `rng`-shuffled order, so repeated calls sample among consistent histories.
//
// Throws std::runtime_error when no consistent history exists.
std::vector<ActionId> SearchConsistentHistory(
    GameProgram& program, const std::vector<HistoryEntry>& history,
    PlayerId player, Rng& rng);

}  // namespace cwm::games

#endif  // CWM_GAMES_HISTORY_SEARCH_H_
