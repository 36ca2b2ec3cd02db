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

#ifndef CWM_GAMES_TIC_TAC_TOE_H_
#define CWM_GAMES_TIC_TAC_TOE_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "cwm/program.h"

namespace cwm::games {

// m,n,k-game: players alternately claim cells "r,c"; the first to own
// `line_length` consecutive cells in a row, column or diagonal wins; a full
// board without a line is a draw. Player 0 moves first.
//
// Defaults give classic 3x3 tic-tac-toe; the generalized registry entry uses
// a 6x6 board with lines of 4.
struct TicTacToeRules {
  int rows = 3;
  int cols = 3;
  int line_length = 3;

  void Validate() const;
};

struct TicTacToeState : ClonableState<TicTacToeState> {
  std::vector<std::int8_t> board;  // -1 empty, else owning player
  int current_player = 0;
  int winner = -1;
  int moves = 0;
  int rows = 0;
  int cols = 0;

  bool operator==(const TicTacToeState&) const = default;
  Value ToValue() const override;
  Value BoardValue() const;
};

class TicTacToeProgram final : public GameProgram {
 public:
  explicit TicTacToeProgram(TicTacToeRules rules);

  ProgramManifest Manifest() const override;
  std::unique_ptr<ProgramState> InitialState() override;
  std::unique_ptr<ProgramState> ApplyAction(ProgramState& state,
                                            const ActionId& action) override;
  Value CurrentPlayer(const ProgramState& state) override;
  Value LegalActions(const ProgramState& state) override;
  Value Rewards(const ProgramState& state) override;
  Value Observations(const ProgramState& state) override;

  const TicTacToeRules& rules() const { return rules_; }

 private:
  bool Terminal(const TicTacToeState& s) const;
  bool CompletesLine(const TicTacToeState& s, int row, int col) const;

  TicTacToeRules rules_;
};

}  // namespace cwm::games

#endif  // CWM_GAMES_TIC_TAC_TOE_H_
