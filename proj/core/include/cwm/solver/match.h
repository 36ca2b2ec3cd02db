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

#ifndef CWM_SOLVER_MATCH_H_
#define CWM_SOLVER_MATCH_H_

#include <array>
#include <cstdint>
#include <string>

#include "cwm/game_spec.h"
#include "cwm/session.h"
#include "cwm/solver/mcts.h"
#include "cwm/value.h"

namespace cwm {

// "random", "mcts:sims=N[,c=X]" or "ismcts:sims=N[,c=X]".
struct AgentSpec {
  enum class Kind { kRandom, kMcts, kIsmcts };
  Kind kind = Kind::kRandom;
  SearchConfig search;

  // Throws std::invalid_argument on malformed specifiers.
  static AgentSpec Parse(const std::string& text);
  std::string ToString() const;
  // Throws std::invalid_argument when the agent cannot play `spec`'s game.
  void CheckCompatible(const GameSpec& spec) const;
};

// Outcomes are from agent 0's point of view.
struct MatchReport {
  std::string agent0;
  std::string agent1;
  int games_requested = 0;
  int games_played = 0;
  int wins = 0;
  int draws = 0;
  int losses = 0;
  std::array<double, 2> mean_rewards = {0.0, 0.0};
  bool incomplete = false;
  std::string error;

  Value ToValue() const;
};

// Plays `n_games` from fresh sessions, agent 0 taking seat g % 2 in game g.
// Game g draws chance outcomes and agent randomness from
// DeriveSeed(seed, g). A session failure stops the match and returns what was
// played so far flagged incomplete.
MatchReport PlayMatch(const SessionFactory& factory, const GameSpec& spec,
                      const AgentSpec& agent0, const AgentSpec& agent1,
                      int n_games, std::uint64_t seed);

}  // namespace cwm

#endif  // CWM_SOLVER_MATCH_H_
