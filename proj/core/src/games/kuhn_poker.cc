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

#include "cwm/games/kuhn_poker.h"

#include <stdexcept>

#include "cwm/games/history_search.h"

namespace cwm::games {
namespace {

constexpr const char* kRanks[] = {"J", "Q", "K"};

const KuhnState& AsKuhn(const ProgramState& state) {
  return dynamic_cast<const KuhnState&>(state);
}

Value CardValue(int card) {
  return card < 0 ? Value(nullptr) : Value(kRanks[card]);
}

int RankOf(const std::string& name) {
  for (int i = 0; i < 3; ++i) {
    if (name == kRanks[i]) return i;
  }
  return -1;
}

bool Terminal(const KuhnState& s) {
  const auto& b = s.bets;
  if (b.size() < 2) return false;
  const std::string& last = b.back();
  return last == "Call" || last == "Fold" || (b[0] == "Check" && b[1] == "Check");
}

bool FacingBet(const KuhnState& s) {
  return !s.bets.empty() && s.bets.back() == "Bet";
}

}  // namespace

Value KuhnState::ToValue() const {
  return Value{{"cards", Value::array({CardValue(cards[0]), CardValue(cards[1])})},
               {"bets", bets}};
}

KuhnPokerProgram::KuhnPokerProgram(std::uint64_t resample_seed)
    : rng_(resample_seed) {}

ProgramManifest KuhnPokerProgram::Manifest() const {
  ProgramManifest m = ProgramManifest::AllFunctions();
  m.resample_source = std::string(kReferenceResamplerSource);
  return m;
}

std::unique_ptr<ProgramState> KuhnPokerProgram::InitialState() {
  return std::make_unique<KuhnState>();
}

std::unique_ptr<ProgramState> KuhnPokerProgram::ApplyAction(
    ProgramState& state, const ActionId& action) {
  auto next = std::make_unique<KuhnState>(AsKuhn(state));
  if (Terminal(*next)) throw std::invalid_argument("game is over");
  if (next->dealt() < 2) {
    const int rank = action.starts_with("deal:") ? RankOf(action.substr(5)) : -1;
    if (rank < 0 || rank == next->cards[0]) {
      throw std::invalid_argument("illegal deal '" + action + "'");
    }
    next->cards[next->dealt()] = rank;
    return next;
  }
  const bool facing = FacingBet(*next);
  const bool ok = facing ? (action == "Call" || action == "Fold")
                         : (action == "Check" || action == "Bet");
  if (!ok) throw std::invalid_argument("illegal action '" + action + "'");
  next->bets.push_back(action);
  return next;
}

Value KuhnPokerProgram::CurrentPlayer(const ProgramState& state) {
  const auto& s = AsKuhn(state);
  if (s.dealt() < 2) return kChancePlayer;
  if (Terminal(s)) return kTerminalPlayer;
  return static_cast<int>(s.bets.size() % 2);
}

Value KuhnPokerProgram::LegalActions(const ProgramState& state) {
  const auto& s = AsKuhn(state);
  Value out = Value::array();
  if (s.dealt() < 2) {
    for (int rank = 0; rank < 3; ++rank) {
      if (rank != s.cards[0]) out.push_back(std::string("deal:") + kRanks[rank]);
    }
    return out;
  }
  if (Terminal(s)) return out;
  if (FacingBet(s)) return Value{"Call", "Fold"};
  return Value{"Check", "Bet"};
}

Value KuhnPokerProgram::Rewards(const ProgramState& state) {
  const auto& s = AsKuhn(state);
  if (s.dealt() < 2 || !Terminal(s)) return Value{0.0, 0.0};
  if (s.bets.back() == "Fold") {
    // The folder is the player who acted last.
    const int folder = static_cast<int>((s.bets.size() - 1) % 2);
    return folder == 0 ? Value{-1.0, 1.0} : Value{1.0, -1.0};
  }
  const double stake = s.bets.back() == "Call" ? 2.0 : 1.0;
  return s.cards[0] > s.cards[1] ? Value{stake, -stake} : Value{-stake, stake};
}

Value KuhnPokerProgram::Observations(const ProgramState& state) {
  const auto& s = AsKuhn(state);
  Value out = Value::array();
  for (int p = 0; p < 2; ++p) {
    out.push_back(Value{{"card", CardValue(s.cards[p])},
                        {"dealt", s.dealt()},
                        {"bets", s.bets}});
  }
  return out;
}

Value KuhnPokerProgram::ResampleHistory(const std::vector<HistoryEntry>& history,
                                        PlayerId player) {
  return SearchConsistentHistory(*this, history, player, rng_);
}

}  // namespace cwm::games
