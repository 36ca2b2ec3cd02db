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

#ifndef CWM_SOLVER_MCTS_H_
#define CWM_SOLVER_MCTS_H_

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "cwm/game_spec.h"
#include "cwm/session.h"
#include "cwm/walk.h"

namespace cwm {

struct SearchConfig {
  int n_simulations = 1000;
  double exploration_constant = std::sqrt(2.0);
  std::uint64_t rng_seed = 0;
  int max_rollout_depth = 200;

  void Validate() const;
};

struct SearchResult {
  ActionId action;
  std::map<ActionId, int> root_visits;
  int simulations = 0;
  // Determinizations that could not be used (ISMCTS only).
  int failed_determinizations = 0;
};

class SearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// UCT over a perfect-information game from `root` (non-terminal, not a chance
// node): selection by UCB1, expansion of one uniformly drawn untried action,
// uniform random rollout, backup of the terminal reward vector with each
// node scored for the player acting there. Chance nodes are sampled
// uniformly. Returns the most visited root action; candidate faults become
// SearchFailure.
SearchResult MctsSearch(Session& session, const GameSpec& spec,
                        StateHandle root, const SearchConfig& config);
ActionId MctsChoose(Session& session, const GameSpec& spec, StateHandle root,
                    const SearchConfig& config);

// Single-observer information-set MCTS for `player` at the walk's current
// state. Each simulation determinizes by resampling a history consistent with
// the player's observations and replaying it; statistics are keyed by the
// player's observation fingerprint and the acting player, with availability
// counts for UCB. Unusable determinizations are skipped; more than half
// failing raises SearchFailure.
SearchResult IsmctsSearch(Session& session, const GameSpec& spec,
                          const WalkRecord& walk, PlayerId player,
                          const SearchConfig& config);
ActionId IsmctsChoose(Session& session, const GameSpec& spec,
                      const WalkRecord& walk, PlayerId player,
                      const SearchConfig& config);

}  // namespace cwm

#endif  // CWM_SOLVER_MCTS_H_
