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

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cwm/candidate.h"
#include "cwm/registry.h"
#include "cwm/solver/match.h"
#include "cwm/solver/mcts.h"
#include "cwm/walk.h"

namespace cwm {
namespace {

// Test-side Tic-Tac-Toe over a 9-char board ('.', 'x', 'o'), x to move first.
class Board {
 public:
  explicit Board(std::string cells) : cells_(std::move(cells)) {}

  char Winner() const {
    static constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8},
                                         {0, 3, 6}, {1, 4, 7}, {2, 5, 8},
                                         {0, 4, 8}, {2, 4, 6}};
    for (const auto& l : kLines) {
      if (cells_[l[0]] != '.' && cells_[l[0]] == cells_[l[1]] &&
          cells_[l[1]] == cells_[l[2]]) {
        return cells_[l[0]];
      }
    }
    return '.';
  }
  bool Full() const { return cells_.find('.') == std::string::npos; }
  char ToMove() const {
    int x = 0;
    int o = 0;
    for (char c : cells_) {
      x += c == 'x';
      o += c == 'o';
    }
    return x == o ? 'x' : 'o';
  }
  Board Play(int cell) const {
    std::string next = cells_;
    next[cell] = ToMove();
    return Board(next);
  }
  const std::string& cells() const { return cells_; }

 private:
  std::string cells_;
};

// Value for the player to move: +1 win, 0 draw, -1 loss.
int Minimax(const Board& board) {
  static std::map<std::string, int> memo;
  if (auto it = memo.find(board.cells()); it != memo.end()) return it->second;
  int value;
  if (board.Winner() != '.') {
    value = -1;
  } else if (board.Full()) {
    value = 0;
  } else {
    value = -2;
    for (int c = 0; c < 9; ++c) {
      if (board.cells()[c] == '.') value = std::max(value, -Minimax(board.Play(c)));
    }
  }
  memo[board.cells()] = value;
  return value;
}

std::vector<ActionId> ActionsFor(const std::string& cells) {
  // Rebuild a move order: alternate x and o placements.
  std::vector<int> xs;
  std::vector<int> os;
  for (int c = 0; c < 9; ++c) {
    if (cells[c] == 'x') xs.push_back(c);
    if (cells[c] == 'o') os.push_back(c);
  }
  std::vector<ActionId> actions;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    actions.push_back(std::to_string(xs[i] / 3) + "," + std::to_string(xs[i] % 3));
    if (i < os.size()) {
      actions.push_back(std::to_string(os[i] / 3) + "," +
                        std::to_string(os[i] % 3));
    }
  }
  return actions;
}

int CellOf(const ActionId& action) {
  return (action[0] - '0') * 3 + (action[2] - '0');
}

class MctsMinimaxTest : public ::testing::TestWithParam<std::string> {};

// MCTS picks a move that preserves the minimax value.
TEST_P(MctsMinimaxTest, ChoosesOptimalMove) {
  const Board board(GetParam());
  const ReferenceGame game = MakeGame("tic_tac_toe");
  auto session = game.NewSession();
  StateHandle s = session->InitialState().state;
  for (const ActionId& a : ActionsFor(board.cells())) {
    s = session->ApplyAction(s, a).new_state;
  }
  SearchConfig config;
  config.n_simulations = 2000;
  config.rng_seed = 3;
  const ActionId choice = MctsChoose(*session, game.spec, s, config);
  EXPECT_EQ(-Minimax(board.Play(CellOf(choice))), Minimax(board))
      << GetParam() << " -> " << choice;
}

INSTANTIATE_TEST_SUITE_P(
    Positions, MctsMinimaxTest,
    ::testing::Values("xx.oo....",  // x wins at 0,2
                      "x.x.o..o.",  // x wins at 0,1
                      "xo..x....",  // o must block 2,2
                      "x...o...x",  // o must take an edge
                      "oxx.o.x..",  // o wins at 2,2
                      "........."));

TEST(MctsTest, SameSeedSameSearch) {
  const ReferenceGame game = MakeGame("tic_tac_toe");
  auto session = game.NewSession();
  const StateHandle s = session->InitialState().state;
  SearchConfig config;
  config.n_simulations = 300;
  const SearchResult a = MctsSearch(*session, game.spec, s, config);
  const SearchResult b = MctsSearch(*session, game.spec, s, config);
  EXPECT_EQ(a.action, b.action);
  EXPECT_EQ(a.root_visits, b.root_visits);
  EXPECT_EQ(a.simulations, 300);
}

TEST(MctsTest, TerminalRootFails) {
  const ReferenceGame game = MakeGame("tic_tac_toe");
  auto session = game.NewSession();
  StateHandle s = session->InitialState().state;
  for (const char* a : {"0,0", "1,0", "0,1", "1,1", "0,2"}) {
    s = session->ApplyAction(s, a).new_state;
  }
  EXPECT_THROW(MctsChoose(*session, game.spec, s, SearchConfig{}),
               SearchFailure);
}

TEST(MctsTest, RejectsBadConfig) {
  SearchConfig config;
  config.n_simulations = 0;
  EXPECT_THROW(config.Validate(), std::invalid_argument);
}

WalkRecord KuhnWalk(Session& session, const GameSpec& spec,
                    const std::vector<ActionId>& actions) {
  WalkRecord walk = StartWalk(session, spec);
  for (const ActionId& a : actions) AdvanceWalk(session, spec, walk, a);
  return walk;
}

// Facing a bet, a King always wins a call and a Jack always loses one.
TEST(IsmctsTest, KuhnCallAndFoldDecisions) {
  const ReferenceGame game = MakeGame("kuhn_poker", {}, 1);
  auto session = game.NewSession();
  SearchConfig config;
  config.n_simulations = 500;
  config.rng_seed = 9;
  const WalkRecord king =
      KuhnWalk(*session, game.spec, {"deal:Q", "deal:K", "Bet"});
  EXPECT_EQ(IsmctsChoose(*session, game.spec, king, 1, config), "Call");
  const WalkRecord jack =
      KuhnWalk(*session, game.spec, {"deal:Q", "deal:J", "Bet"});
  EXPECT_EQ(IsmctsChoose(*session, game.spec, jack, 1, config), "Fold");
}

TEST(IsmctsTest, StubResamplerIsSearchFailure) {
  const ReferenceGame game = MakeGame("kuhn_poker");
  auto session = BuiltinCandidate("mutant_stub_resampler", game)
                     .Factory(Deadline::Never())();
  const WalkRecord walk =
      KuhnWalk(*session, game.spec, {"deal:Q", "deal:K", "Bet"});
  SearchConfig config;
  config.n_simulations = 50;
  EXPECT_THROW(IsmctsSearch(*session, game.spec, walk, 1, config),
               SearchFailure);
}

TEST(AgentSpecTest, Parses) {
  EXPECT_EQ(AgentSpec::Parse("random").kind, AgentSpec::Kind::kRandom);
  const AgentSpec mcts = AgentSpec::Parse("mcts:sims=2000,c=0.5");
  EXPECT_EQ(mcts.kind, AgentSpec::Kind::kMcts);
  EXPECT_EQ(mcts.search.n_simulations, 2000);
  EXPECT_EQ(mcts.search.exploration_constant, 0.5);
  EXPECT_EQ(AgentSpec::Parse("ismcts:sims=10").kind, AgentSpec::Kind::kIsmcts);
  EXPECT_EQ(AgentSpec::Parse(mcts.ToString()).search.n_simulations, 2000);
  for (const char* bad : {"alphazero", "mcts", "mcts:sims=0", "mcts:sims=x",
                          "mcts:depth=3", "random:sims=3", "mcts:sims"}) {
    EXPECT_THROW(AgentSpec::Parse(bad), std::invalid_argument) << bad;
  }
}

TEST(AgentSpecTest, ChecksGameCompatibility) {
  const GameSpec ttt = MakeGame("tic_tac_toe").spec;
  const GameSpec kuhn = MakeGame("kuhn_poker").spec;
  EXPECT_THROW(AgentSpec::Parse("ismcts:sims=5").CheckCompatible(ttt),
               std::invalid_argument);
  EXPECT_THROW(AgentSpec::Parse("mcts:sims=5").CheckCompatible(kuhn),
               std::invalid_argument);
  EXPECT_NO_THROW(AgentSpec::Parse("random").CheckCompatible(kuhn));
}

// Exact outcome distribution of uniformly random Tic-Tac-Toe play.
std::array<double, 2> RandomPlayWinProbabilities(const Board& board) {
  if (board.Winner() == 'x') return {1.0, 0.0};
  if (board.Winner() == 'o') return {0.0, 1.0};
  if (board.Full()) return {0.0, 0.0};
  std::array<double, 2> total = {0.0, 0.0};
  int n = 0;
  for (int c = 0; c < 9; ++c) {
    if (board.cells()[c] != '.') continue;
    const auto p = RandomPlayWinProbabilities(board.Play(c));
    total[0] += p[0];
    total[1] += p[1];
    ++n;
  }
  return {total[0] / n, total[1] / n};
}

TEST(MatchTest, RandomTicTacToeMatchesExactDistribution) {
  const auto p = RandomPlayWinProbabilities(Board("........."));
  EXPECT_NEAR(p[0], 737.0 / 1260.0, 1e-12);
  EXPECT_NEAR(p[1], 121.0 / 420.0, 1e-12);
  const ReferenceGame game = MakeGame("tic_tac_toe");
  const int n = 20000;
  const MatchReport report =
      PlayMatch(game.Factory(), game.spec, AgentSpec::Parse("random"),
                AgentSpec::Parse("random"), n, 1);
  ASSERT_EQ(report.games_played, n);
  // Agent 0 moves first in half the games.
  const double expected_wins = (p[0] + p[1]) / 2;
  const double sigma = std::sqrt(expected_wins * (1 - expected_wins) / n);
  EXPECT_NEAR(static_cast<double>(report.wins) / n, expected_wins, 4 * sigma);
  const double expected_draws = 1 - p[0] - p[1];
  EXPECT_NEAR(static_cast<double>(report.draws) / n, expected_draws,
              4 * std::sqrt(expected_draws * (1 - expected_draws) / n));
}

TEST(MatchTest, RandomKuhnIsSymmetric) {
  const ReferenceGame game = MakeGame("kuhn_poker");
  const MatchReport report =
      PlayMatch(game.Factory(), game.spec, AgentSpec::Parse("random"),
                AgentSpec::Parse("random"), 20000, 5);
  EXPECT_LE(std::abs(report.mean_rewards[0]), 0.03);
  EXPECT_EQ(report.mean_rewards[0], -report.mean_rewards[1]);
}

TEST(MatchTest, MctsNeverLosesSmallMatch) {
  const ReferenceGame game = MakeGame("tic_tac_toe");
  const MatchReport report =
      PlayMatch(game.Factory(), game.spec, AgentSpec::Parse("mcts:sims=2000"),
                AgentSpec::Parse("random"), 10, 7);
  EXPECT_EQ(report.games_played, 10);
  EXPECT_EQ(report.losses, 0);
  EXPECT_FALSE(report.incomplete);
}

TEST(MatchTest, CrashingCandidateMarksIncomplete) {
  const ReferenceGame game = MakeGame("leduc_poker");
  const MatchReport report = PlayMatch(
      BuiltinCandidate("mutant_crash_key", game).Factory(Deadline::Never()),
      game.spec, AgentSpec::Parse("random"), AgentSpec::Parse("random"), 50, 1);
  EXPECT_TRUE(report.incomplete);
  EXPECT_FALSE(report.error.empty());
  EXPECT_LT(report.games_played, 50);
}

TEST(MatchTest, SameSeedSameReport) {
  const ReferenceGame game = MakeGame("kuhn_poker");
  auto play = [&] {
    return PlayMatch(game.Factory(), game.spec,
                     AgentSpec::Parse("ismcts:sims=50"),
                     AgentSpec::Parse("random"), 20, 3)
        .ToValue();
  };
  EXPECT_EQ(play(), play());
}

}  // namespace
}  // namespace cwm
