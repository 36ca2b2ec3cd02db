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

#include "cwm/games/leduc_poker.h"

#include <algorithm>
#include <stdexcept>

#include "cwm/games/history_search.h"

namespace cwm::games {
namespace {

constexpr const char* kRanks[] = {"J", "Q", "K"};
constexpr int kRaiseSize[] = {2, 4};

const LeducState& AsLeduc(const ProgramState& state) {
  return dynamic_cast<const LeducState&>(state);
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

int Remaining(const LeducState& s, int rank) {
  int left = 2;
  for (int card : s.private_cards) left -= (card == rank);
  left -= (s.public_card == rank);
  return left;
}

bool RoundOver(const std::vector<std::string>& bets) {
  return bets.size() >= 2 && bets.back() == "Call";
}

bool Terminal(const LeducState& s) {
  return s.folded >= 0 || (s.public_card >= 0 && RoundOver(s.bets[1]));
}

bool ChanceNode(const LeducState& s) {
  if (s.private_cards[1] < 0) return true;
  return s.public_card < 0 && RoundOver(s.bets[0]);
}

int HandStrength(int private_card, int public_card) {
  return private_card == public_card ? 10 + private_card : private_card;
}

}  // namespace

int LeducState::dealt() const {
  return (private_cards[0] >= 0) + (private_cards[1] >= 0) + (public_card >= 0);
}

Value LeducState::ToValue() const {
  return Value{
      {"private_cards",
       Value::array({CardValue(private_cards[0]), CardValue(private_cards[1])})},
      {"public_card", CardValue(public_card)},
      {"bets", Value::array({bets[0], bets[1]})},
      {"contributions", contributions},
      {"folded", folded >= 0 ? Value(folded) : Value(nullptr)}};
}

LeducPokerProgram::LeducPokerProgram(std::uint64_t resample_seed)
    : rng_(resample_seed) {}

ProgramManifest LeducPokerProgram::Manifest() const {
  ProgramManifest m = ProgramManifest::AllFunctions();
  m.resample_source = std::string(kReferenceResamplerSource);
  return m;
}

std::unique_ptr<ProgramState> LeducPokerProgram::InitialState() {
  return std::make_unique<LeducState>();
}

std::unique_ptr<ProgramState> LeducPokerProgram::ApplyAction(
    ProgramState& state, const ActionId& action) {
  auto next = std::make_unique<LeducState>(AsLeduc(state));
  if (Terminal(*next)) throw std::invalid_argument("game is over");
  if (ChanceNode(*next)) {
    const int rank = action.starts_with("deal:") ? RankOf(action.substr(5)) : -1;
    if (rank < 0 || Remaining(*next, rank) == 0) {
      throw std::invalid_argument("illegal deal '" + action + "'");
    }
    if (next->private_cards[0] < 0) {
      next->private_cards[0] = rank;
    } else if (next->private_cards[1] < 0) {
      next->private_cards[1] = rank;
    } else {
      next->public_card = rank;
    }
    return next;
  }
  const int round = next->round() - 1;
  auto& bets = next->bets[round];
  const int actor = static_cast<int>(bets.size() % 2);
  const int high = std::max(next->contributions[0], next->contributions[1]);
  if (action == "Fold") {
    next->folded = actor;
  } else if (action == "Call") {
    next->contributions[actor] = high;
  } else if (action == "Raise" &&
             std::count(bets.begin(), bets.end(), "Raise") == 0) {
    next->contributions[actor] = high + kRaiseSize[round];
  } else {
    throw std::invalid_argument("illegal action '" + action + "'");
  }
  bets.push_back(action);
  return next;
}

Value LeducPokerProgram::CurrentPlayer(const ProgramState& state) {
  const auto& s = AsLeduc(state);
  if (Terminal(s)) return kTerminalPlayer;
  if (ChanceNode(s)) return kChancePlayer;
  return static_cast<int>(s.bets[s.round() - 1].size() % 2);
}

Value LeducPokerProgram::LegalActions(const ProgramState& state) {
  const auto& s = AsLeduc(state);
  Value out = Value::array();
  if (Terminal(s)) return out;
  if (ChanceNode(s)) {
    for (int rank = 0; rank < 3; ++rank) {
      if (Remaining(s, rank) > 0) out.push_back(std::string("deal:") + kRanks[rank]);
    }
    return out;
  }
  const auto& bets = s.bets[s.round() - 1];
  out.push_back("Fold");
  out.push_back("Call");
  if (std::count(bets.begin(), bets.end(), "Raise") == 0) out.push_back("Raise");
  return out;
}

Value LeducPokerProgram::Rewards(const ProgramState& state) {
  const auto& s = AsLeduc(state);
  if (!Terminal(s)) return Value{0.0, 0.0};
  if (s.folded >= 0) {
    const double lost = s.contributions[s.folded];
    return s.folded == 0 ? Value{-lost, lost} : Value{lost, -lost};
  }
  const int h0 = HandStrength(s.private_cards[0], s.public_card);
  const int h1 = HandStrength(s.private_cards[1], s.public_card);
  const double pot_share = s.contributions[0];
  if (h0 == h1) return Value{0.0, 0.0};
  return h0 > h1 ? Value{pot_share, -pot_share} : Value{-pot_share, pot_share};
}

Value LeducPokerProgram::Observations(const ProgramState& state) {
  const auto& s = AsLeduc(state);
  Value out = Value::array();
  for (int p = 0; p < 2; ++p) {
    out.push_back(Value{{"private_card", CardValue(s.private_cards[p])},
                        {"public_card", CardValue(s.public_card)},
                        {"dealt", s.dealt()},
                        {"bets", Value::array({s.bets[0], s.bets[1]})},
                        {"contributions", s.contributions}});
  }
  return out;
}

Value LeducPokerProgram::ResampleHistory(
    const std::vector<HistoryEntry>& history, PlayerId player) {
  return SearchConsistentHistory(*this, history, player, rng_);
}

}  // namespace cwm::games
