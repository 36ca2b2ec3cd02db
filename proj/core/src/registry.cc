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

#include "cwm/registry.h"

#include <algorithm>
#include <stdexcept>

#include "cwm/games/kuhn_poker.h"
#include "cwm/games/leduc_poker.h"
#include "cwm/games/tic_tac_toe.h"
#include "cwm/mutants.h"

namespace cwm {
namespace {

std::string JoinNames(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& name : names) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

void RejectUnknownParams(const std::string& game, const GameParams& params,
                         const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : params) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw std::invalid_argument("game '" + game +
                                  "' does not accept parameter '" + key + "'");
    }
  }
}

ReferenceGame MakeTicTacToe(const std::string& name, games::TicTacToeRules rules,
                            const GameParams& params) {
  RejectUnknownParams(name, params, {"board_rows", "board_cols", "line_length"});
  if (auto it = params.find("board_rows"); it != params.end()) rules.rows = it->second;
  if (auto it = params.find("board_cols"); it != params.end()) rules.cols = it->second;
  if (auto it = params.find("line_length"); it != params.end()) {
    rules.line_length = it->second;
  }
  rules.Validate();
  ReferenceGame game;
  game.spec.name = name;
  game.spec.info_kind = InfoKind::kPerfect;
  game.make_program = [rules] {
    return std::make_shared<games::TicTacToeProgram>(rules);
  };
  return game;
}

}  // namespace

std::unique_ptr<Session> ReferenceGame::NewSession() const {
  return std::make_unique<InProcessSession>(make_program());
}

SessionFactory ReferenceGame::Factory() const {
  auto make = make_program;
  return [make]() -> std::unique_ptr<Session> {
    return std::make_unique<InProcessSession>(make());
  };
}

std::vector<std::string> RegisteredGameNames() {
  return {"generalized_tic_tac_toe", "kuhn_poker", "leduc_poker", "tic_tac_toe"};
}

ReferenceGame MakeGame(const std::string& name, const GameParams& params,
                       std::optional<std::uint64_t> chance_seed) {
  const std::uint64_t seed = chance_seed.value_or(0);
  if (name == "tic_tac_toe") {
    return MakeTicTacToe(name, {3, 3, 3}, params);
  }
  if (name == "generalized_tic_tac_toe") {
    return MakeTicTacToe(name, {6, 6, 4}, params);
  }
  if (name == "kuhn_poker" || name == "leduc_poker") {
    RejectUnknownParams(name, params, {});
    ReferenceGame game;
    game.spec.name = name;
    game.spec.info_kind = InfoKind::kImperfect;
    if (name == "kuhn_poker") {
      game.make_program = [seed] {
        return std::make_shared<games::KuhnPokerProgram>(seed);
      };
    } else {
      game.make_program = [seed] {
        return std::make_shared<games::LeducPokerProgram>(seed);
      };
    }
    return game;
  }
  throw std::invalid_argument("unknown game '" + name + "'; registered games: " +
                              JoinNames(RegisteredGameNames()));
}

std::vector<std::string> BuiltinCandidateNames() {
  std::vector<std::string> names = RegisteredGameNames();
  for (const auto& mutant : MutantNames()) names.emplace_back(mutant.name);
  return names;
}

std::shared_ptr<GameProgram> MakeBuiltinProgram(const std::string& candidate,
                                                const ReferenceGame& game) {
  if (candidate == game.spec.name) return game.make_program();
  if (auto kind = MutantKindFromName(candidate)) {
    return MakeMutant(*kind, game.make_program());
  }
  const auto games = RegisteredGameNames();
  if (std::find(games.begin(), games.end(), candidate) != games.end()) {
    return MakeGame(candidate).make_program();
  }
  throw std::invalid_argument("unknown builtin candidate '" + candidate +
                              "'; available: " +
                              JoinNames(BuiltinCandidateNames()));
}

namespace {

class Enumerator {
 public:
  Enumerator(GameProgram& program, std::size_t max_nodes,
             const ActionFilter& filter)
      : program_(program), max_nodes_(max_nodes), filter_(filter) {}

  void Run(const ProgramState& state) {
    if (++nodes_ > max_nodes_) {
      throw BudgetExceeded("enumeration exceeded " +
                           std::to_string(max_nodes_) + " nodes");
    }
    const PlayerId player = program_.CurrentPlayer(state).get<PlayerId>();
    if (player == kTerminalPlayer) {
      out_.push_back({path_, program_.Rewards(state).get<std::vector<double>>()});
      return;
    }
    for (const ActionId& action :
         program_.LegalActions(state).get<std::vector<ActionId>>()) {
      if (player != kChancePlayer && filter_ && !filter_(player, action)) {
        continue;
      }
      auto copy = state.Clone();
      auto next = program_.ApplyAction(*copy, action);
      path_.push_back(action);
      Run(*next);
      path_.pop_back();
    }
  }

  std::vector<TerminalHistory> Take() { return std::move(out_); }

 private:
  GameProgram& program_;
  std::size_t max_nodes_;
  const ActionFilter& filter_;
  std::size_t nodes_ = 0;
  std::vector<ActionId> path_;
  std::vector<TerminalHistory> out_;
};

}  // namespace

std::vector<TerminalHistory> EnumerateTerminals(const ReferenceGame& game,
                                                std::size_t max_nodes,
                                                const ActionFilter& filter) {
  auto program = game.make_program();
  Enumerator enumerator(*program, max_nodes, filter);
  enumerator.Run(*program->InitialState());
  return enumerator.Take();
}

}  // namespace cwm
