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

#ifndef CWM_GAMES_KUHN_POKER_H_
#define CWM_GAMES_KUHN_POKER_H_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cwm/program.h"
#include "cwm/rng.h"

namespace cwm::games {

// Two-player Kuhn poker over {J, Q, K}. Chance deals one card to player 0
// then one to player 1 ("deal:K"). Each player antes 1; player 0 may Check
// or Bet 1; facing a Bet a player may Call or Fold. Lines: Check-Check,
// Check-Bet-Call, Check-Bet-Fold, Bet-Call, Bet-Fold.
struct KuhnState : ClonableState<KuhnState> {
  std::array<int, 2> cards = {-1, -1};  // 0=J, 1=Q, 2=K
  std::vector<std::string> bets;

  bool operator==(const KuhnState&) const = default;
  int dealt() const { return (cards[0] >= 0) + (cards[1] >= 0); }
  Value ToValue() const override;
};

class KuhnPokerProgram final : public GameProgram {
 public:
  explicit KuhnPokerProgram(std::uint64_t resample_seed = 0);

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

#endif  // CWM_GAMES_KUHN_POKER_H_
