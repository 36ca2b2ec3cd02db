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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cwm/registry.h"
#include "cwm/rng.h"
#include "cwm/session.h"
#include "cwm/tier_information.h"
#include "cwm/walk.h"

namespace cwm {
namespace {

StateHandle Replay(Session& session, const std::vector<ActionId>& actions) {
  StateHandle state = session.InitialState().state;
  for (const ActionId& action : actions) {
    state = session.ApplyAction(state, action).new_state;
  }
  return state;
}

double Sum(const std::vector<double>& values) {
  double total = 0;
  for (double v : values) total += v;
  return total;
}

TEST(RegistryTest, ListsShippedGames) {
  EXPECT_EQ(RegisteredGameNames(),
            (std::vector<std::string>{"generalized_tic_tac_toe", "kuhn_poker",
                                      "leduc_poker", "tic_tac_toe"}));
}

TEST(RegistryTest, UnknownGameListsRegistry) {
  try {
    MakeGame("chess");
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    const std::string message = e.what();
    for (const std::string& name : RegisteredGameNames()) {
      EXPECT_NE(message.find(name), std::string::npos) << message;
    }
  }
}

TEST(RegistryTest, ValidatesParameters) {
  EXPECT_THROW(MakeGame("kuhn_poker", {{"board_rows", 3}}),
               std::invalid_argument);
  EXPECT_THROW(MakeGame("tic_tac_toe", {{"depth", 3}}), std::invalid_argument);
  EXPECT_THROW(MakeGame("generalized_tic_tac_toe", {{"line_length", 9}}),
               std::invalid_argument);
  EXPECT_THROW(MakeGame("generalized_tic_tac_toe", {{"board_rows", 0}}),
               std::invalid_argument);
  EXPECT_NO_THROW(MakeGame("generalized_tic_tac_toe",
                           {{"board_rows", 4}, {"board_cols", 5},
                            {"line_length", 3}}));
}

TEST(RegistryTest, BuiltinCandidates) {
  const ReferenceGame game = MakeGame("kuhn_poker");
  for (const std::string& name : BuiltinCandidateNames()) {
    EXPECT_NE(MakeBuiltinProgram(name, game), nullptr) << name;
  }
  EXPECT_NE(MakeBuiltinProgram("tic_tac_toe", game), nullptr);
  EXPECT_THROW(MakeBuiltinProgram("mutant_unknown", game),
               std::invalid_argument);
}

TEST(TicTacToeTest, InitialStateHasNineActions) {
  const ReferenceGame game = MakeGame("tic_tac_toe");
  auto session = game.NewSession();
  const StateHandle s = session->InitialState().state;
  EXPECT_EQ(LegalActionsOf(*session, s).size(), 9u);
  EXPECT_EQ(CurrentPlayerOf(*session, s), 0);
  EXPECT_EQ(RewardsOf(*session, s, 2), (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(PlayerNameOr(*session, 0), "Player 0");
}

TEST(TicTacToeTest, FinishedGameIsTerminalWithNoActions) {
  const ReferenceGame game = MakeGame("tic_tac_toe");
  auto session = game.NewSession();
  const StateHandle s =
      Replay(*session, {"0,0", "1,0", "0,1", "1,1", "0,2"});
  EXPECT_EQ(CurrentPlayerOf(*session, s), kTerminalPlayer);
  EXPECT_TRUE(LegalActionsOf(*session, s).empty());
  EXPECT_EQ(RewardsOf(*session, s, 2), (std::vector<double>{1.0, -1.0}));
}

// Number of complete Tic-Tac-Toe games, a well-known constant.
TEST(TicTacToeTest, TerminalCountMatchesKnownTotal) {
  const auto terminals = EnumerateTerminals(MakeGame("tic_tac_toe"), 1u << 22);
  EXPECT_EQ(terminals.size(), 255168u);
  std::set<std::vector<double>> outcomes;
  for (const auto& t : terminals) outcomes.insert(t.rewards);
  EXPECT_EQ(outcomes, (std::set<std::vector<double>>{
                          {1.0, -1.0}, {-1.0, 1.0}, {0.0, 0.0}}));
}

TEST(TicTacToeTest, EnumerationRespectsBudget) {
  EXPECT_THROW(EnumerateTerminals(MakeGame("tic_tac_toe"), 1000),
               BudgetExceeded);
}

// Test-side Kuhn payoff: ante 1, bet 1.
std::vector<double> KuhnPayoff(int card0, int card1, const std::string& line) {
  const double showdown = card0 > card1 ? 1.0 : -1.0;
  if (line == "Check Check") return {showdown, -showdown};
  if (line == "Bet Call" || line == "Check Bet Call") {
    return {2 * showdown, -2 * showdown};
  }
  if (line == "Bet Fold") return {1.0, -1.0};
  return {-1.0, 1.0};  // Check Bet Fold
}

TEST(KuhnTest, TerminalsMatchIndependentEnumeration) {
  const std::string ranks = "JQK";
  std::map<std::vector<ActionId>, std::vector<double>> expected;
  for (int c0 = 0; c0 < 3; ++c0) {
    for (int c1 = 0; c1 < 3; ++c1) {
      if (c0 == c1) continue;
      for (const std::string line : {"Check Check", "Check Bet Call",
                                     "Check Bet Fold", "Bet Call",
                                     "Bet Fold"}) {
        std::vector<ActionId> actions = {std::string("deal:") + ranks[c0],
                                         std::string("deal:") + ranks[c1]};
        std::istringstream words(line);
        for (std::string w; words >> w;) actions.push_back(w);
        expected[actions] = KuhnPayoff(c0, c1, line);
      }
    }
  }
  ASSERT_EQ(expected.size(), 30u);
  const auto terminals = EnumerateTerminals(MakeGame("kuhn_poker"), 100000);
  ASSERT_EQ(terminals.size(), 30u);
  for (const auto& t : terminals) {
    ASSERT_TRUE(expected.count(t.actions)) << ::testing::PrintToString(t.actions);
    EXPECT_EQ(t.rewards, expected[t.actions]);
  }
}

TEST(KuhnTest, ObservationHidesOpponentCard) {
  const ReferenceGame game = MakeGame("kuhn_poker");
  auto session = game.NewSession();
  const StateHandle kq = Replay(*session, {"deal:K", "deal:Q"});
  const StateHandle kj = Replay(*session, {"deal:K", "deal:J"});
  const StateHandle qj = Replay(*session, {"deal:Q", "deal:J"});
  const auto obs_kq = ObservationsOf(*session, kq, 2);
  const auto obs_kj = ObservationsOf(*session, kj, 2);
  const auto obs_qj = ObservationsOf(*session, qj, 2);
  EXPECT_EQ(CanonicalFingerprint(obs_kq[0]), CanonicalFingerprint(obs_kj[0]));
  EXPECT_NE(CanonicalFingerprint(obs_kq[1]), CanonicalFingerprint(obs_kj[1]));
  EXPECT_NE(CanonicalFingerprint(obs_kq[0]), CanonicalFingerprint(obs_qj[0]));
}

TEST(KuhnTest, ChanceNodesUseSentinel) {
  const ReferenceGame game = MakeGame("kuhn_poker");
  auto session = game.NewSession();
  const StateHandle s = session->InitialState().state;
  EXPECT_EQ(CurrentPlayerOf(*session, s), kChancePlayer);
  EXPECT_EQ(LegalActionsOf(*session, s),
            (std::vector<ActionId>{"deal:J", "deal:Q", "deal:K"}));
}

// Per betting round with one raise allowed and fold always legal:
// continuing lines {Call Call, Call Raise Call, Raise Call} and folding lines
// {Fold, Call Fold, Call Raise Fold, Raise Fold}. Private ranks are dealt
// from two copies each, so the public card has 2 ranks left after a pair
// and 3 otherwise.
TEST(LeducTest, TerminalCountMatchesCombinatorialOracle) {
  const int pairs = 3;
  const int non_pairs = 6;
  const int public_options = pairs * 2 + non_pairs * 3;
  const int expected =
      (pairs + non_pairs) * 4 + 3 * public_options * (4 + 3);
  EXPECT_EQ(expected, 540);
  const auto terminals = EnumerateTerminals(MakeGame("leduc_poker"), 1000000);
  EXPECT_EQ(static_cast<int>(terminals.size()), expected);
}

TEST(LeducTest, CallOnlyTerminalsAreShowdowns) {
  const auto terminals = EnumerateTerminals(
      MakeGame("leduc_poker"), 1000000,
      [](PlayerId, const ActionId& action) { return action == "Call"; });
  EXPECT_EQ(terminals.size(), 24u);
  for (const auto& t : terminals) {
    EXPECT_EQ(t.actions.size(), 7u);
    EXPECT_EQ(std::count(t.actions.begin(), t.actions.end(), "Call"), 4);
  }
}

TEST(LeducTest, PreflopActions) {
  const ReferenceGame game = MakeGame("leduc_poker");
  auto session = game.NewSession();
  const StateHandle s = Replay(*session, {"deal:K", "deal:Q"});
  EXPECT_EQ(CurrentPlayerOf(*session, s), 0);
  const auto legal = LegalActionsOf(*session, s);
  for (const char* a : {"Fold", "Call", "Raise"}) {
    EXPECT_NE(std::find(legal.begin(), legal.end(), a), legal.end()) << a;
  }
}

TEST(LeducTest, FoldPreflopLoses) {
  const ReferenceGame game = MakeGame("leduc_poker");
  auto session = game.NewSession();
  const StateHandle s = Replay(*session, {"deal:K", "deal:Q", "Fold"});
  EXPECT_EQ(CurrentPlayerOf(*session, s), kTerminalPlayer);
  const auto r = RewardsOf(*session, s, 2);
  EXPECT_LT(r[0], 0);
  EXPECT_GT(r[1], 0);
}

TEST(LeducTest, EqualPairsSplit) {
  const ReferenceGame game = MakeGame("leduc_poker");
  auto session = game.NewSession();
  const StateHandle s = Replay(
      *session, {"deal:Q", "deal:Q", "Call", "Call", "deal:K", "Call", "Call"});
  EXPECT_EQ(RewardsOf(*session, s, 2), (std::vector<double>{0.0, 0.0}));
}

class ZeroSumTest : public ::testing::TestWithParam<std::string> {};

TEST_P(ZeroSumTest, EveryEnumeratedTerminalIsZeroSum) {
  const auto terminals = EnumerateTerminals(MakeGame(GetParam()), 1u << 22);
  ASSERT_FALSE(terminals.empty());
  for (const auto& t : terminals) {
    ASSERT_EQ(Sum(t.rewards), 0.0) << ::testing::PrintToString(t.actions);
  }
}

INSTANTIATE_TEST_SUITE_P(Games, ZeroSumTest,
                         ::testing::Values("tic_tac_toe", "kuhn_poker",
                                           "leduc_poker"));

// Too large to enumerate; random walks instead.
TEST(GeneralizedTicTacToeTest, RandomWalksAlternateAndAreZeroSum) {
  const ReferenceGame game = MakeGame("generalized_tic_tac_toe");
  auto session = game.NewSession();
  Rng rng(3);
  for (int walk = 0; walk < 50; ++walk) {
    StateHandle s = session->InitialState().state;
    PlayerId expected = 0;
    for (;;) {
      const PlayerId p = CurrentPlayerOf(*session, s);
      if (p == kTerminalPlayer) break;
      ASSERT_EQ(p, expected);
      expected = 1 - expected;
      const auto legal = LegalActionsOf(*session, s);
      s = session->ApplyAction(s, legal[UniformIndex(rng, legal.size())])
              .new_state;
    }
    EXPECT_EQ(Sum(RewardsOf(*session, s, 2)), 0.0);
  }
}

TEST(GeneralizedTicTacToeTest, DefaultBoardIsSixBySix) {
  const ReferenceGame game = MakeGame("generalized_tic_tac_toe");
  auto session = game.NewSession();
  const auto legal = LegalActionsOf(*session, session->InitialState().state);
  EXPECT_EQ(legal.size(), 36u);
  EXPECT_NE(std::find(legal.begin(), legal.end(), "5,5"), legal.end());
}

TEST(ReplayTest, SameActionsGiveSameFingerprints) {
  for (const std::string name : {"tic_tac_toe", "leduc_poker"}) {
    const ReferenceGame game = MakeGame(name);
    auto a = game.NewSession();
    auto b = game.NewSession();
    Rng rng(11);
    StateHandle sa = a->InitialState().state;
    StateHandle sb = b->InitialState().state;
    while (CurrentPlayerOf(*a, sa) != kTerminalPlayer) {
      ASSERT_EQ(a->StateFingerprint(sa), b->StateFingerprint(sb));
      const auto legal = LegalActionsOf(*a, sa);
      const ActionId action = legal[UniformIndex(rng, legal.size())];
      sa = a->ApplyAction(sa, action).new_state;
      sb = b->ApplyAction(sb, action).new_state;
    }
    EXPECT_EQ(a->StateFingerprint(sa), b->StateFingerprint(sb));
  }
}

class ResamplerTest : public ::testing::TestWithParam<std::string> {};

TEST_P(ResamplerTest, ReferenceResamplerIsExact) {
  const ReferenceGame game = MakeGame(GetParam(), {}, 5);
  auto session = game.NewSession();
  Rng rng(17);
  for (int probe = 0; probe < 100; ++probe) {
    WalkRecord walk = StartWalk(*session, game.spec);
    const int length = 1 + static_cast<int>(UniformIndex(rng, 8));
    for (int i = 0; i < length; ++i) {
      const auto legal = LegalActionsOf(*session, walk.current().state);
      if (legal.empty()) break;
      AdvanceWalk(*session, game.spec, walk,
                  legal[UniformIndex(rng, legal.size())]);
    }
    const PlayerId player = probe % 2;
    const auto trajectory = ResampleFor(*session, walk, player);
    const ProbeOutcome outcome =
        CheckResampledTrajectory(*session, game.spec, walk, player, trajectory);
    ASSERT_TRUE(outcome.all()) << outcome.failure;
  }
}

INSTANTIATE_TEST_SUITE_P(Games, ResamplerTest,
                         ::testing::Values("kuhn_poker", "leduc_poker"));

}  // namespace
}  // namespace cwm
