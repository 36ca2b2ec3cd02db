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

#ifndef CWM_GAMES_LEDUC_POKER_H_
#define CWM_GAMES_LEDUC_POKER_H_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cwm/program.h"
#include "cwm/rng.h"

namespace cwm::games {

// Two-player Leduc hold'em with a six-card deck {J, Q, K} x 2.
//
//   * Chance deals a private card to player 0, then player 1 ("deal:Q"),
//     and after the first betting round one public card.
//   * Ante 1 each. Raise sizes are 2 in round one and 4 in round two, with
//     at most one raise per round. Fold is legal at every decision.
//   * Player 0 acts first in both rounds; a round ends on a Call that is not
//     the round's opening action.
//   * Showdown: pairing the public card beats any unpaired hand, otherwise
//     the higher private card wins; equal ranks split the pot.
struct LeducState : ClonableState<LeducState> {
  std::array<int, 2> private_cards = {-1, -1};  // 0=J, 1=Q, 2=K
  int public_card = -1;
  std::array<std::vector<std::string>, 2> bets;
  std::array<int, 2> contributions = {1, 1};
  int folded = -1;

  bool operator==(const LeducState&) const = default;
  int dealt() const;
  int round() const { return public_card >= 0 ? 2 : 1; }
  Value ToValue() const override;
};

class LeducPokerProgram final : public GameProgram {
 public:
  explicit LeducPokerProgram(std::uint64_t resample_seed = 0);

  ProgramManifest Manifest() const override;
  std::unique_ptr<ProgramState> InitialState() override;
  std::unique_ptr<ProgramState> ApplyAction(ProgramState& state,
                                            const ActionId& action) override;
  Value CurrentPlayer(const ProgramState& state) override;
  Value LegalActions(const ProgramState& state) override;
  Value Rewards(const ProgramState& state) override;
  Value Observations(const ProgramState& state) override;
  Value ResampleHistory(const std::vector<HistoryEntry>& history,
                        PlayerId player) override;

 private:
  Rng rng_;
};

}  // namespace cwm::games

#endif  // CWM_GAMES_LEDUC_POKER_H_
