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

#ifndef CWM_REGISTRY_H_
#define CWM_REGISTRY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cwm/game_spec.h"
#include "cwm/program.h"
#include "cwm/session.h"

namespace cwm {

// Integer game parameters: board_rows, board_cols, line_length.
using GameParams = std::map<std::string, int>;

// A known-correct in-process game: oracle, fixture and solver substrate.
struct ReferenceGame {
  GameSpec spec;
  std::function<std::shared_ptr<GameProgram>()> make_program;

  std::unique_ptr<Session> NewSession() const;
  SessionFactory Factory() const;
};

std::vector<std::string> RegisteredGameNames();

// Throws std::invalid_argument for unknown names (the message lists the
// registry) and for unknown or invalid parameters. `chance_seed` seeds the
// reference resampler's sampling order.
ReferenceGame MakeGame(const std::string& name, const GameParams& params = {},
                       std::optional<std::uint64_t> chance_seed = std::nullopt);

// Builtin candidate programs for `game`: the game's own name (or any other
// registered game name) gives a reference program; "mutant_*" names give
// that mutant decorating `game`'s reference. Throws std::invalid_argument.
std::shared_ptr<GameProgram> MakeBuiltinProgram(const std::string& candidate,
                                                const ReferenceGame& game);
std::vector<std::string> BuiltinCandidateNames();

struct TerminalHistory {
  std::vector<ActionId> actions;
  std::vector<double> rewards;
};

// Optional restriction on decision-node actions; chance actions are always
// expanded.
using ActionFilter = std::function<bool(PlayerId, const ActionId&)>;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive depth-first enumeration of every terminal history, chance
// included. Throws BudgetExceeded when more than `max_nodes` states would be
// visited.
std::vector<TerminalHistory> EnumerateTerminals(
    const ReferenceGame& game, std::size_t max_nodes,
    const ActionFilter& filter = {});

}  // namespace cwm

#endif  // CWM_REGISTRY_H_
