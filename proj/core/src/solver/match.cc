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

#include "cwm/solver/match.h"

#include <memory>
#include <sstream>
#include <stdexcept>

#include "cwm/errors.h"
#include "cwm/rng.h"
#include "cwm/walk.h"

namespace cwm {
namespace {

std::string FormatNumber(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

}  // namespace

AgentSpec AgentSpec::Parse(const std::string& text) {
  AgentSpec agent;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (kind == "random") {
    if (colon != std::string::npos) {
      throw std::invalid_argument("agent 'random' takes no options");
    }
    return agent;
  }
  if (kind == "mcts") {
    agent.kind = Kind::kMcts;
  } else if (kind == "ismcts") {
    agent.kind = Kind::kIsmcts;
  } else {
    throw std::invalid_argument("unknown agent '" + text +
                                "' (expected random, mcts:sims=N[,c=X] or "
                                "ismcts:sims=N[,c=X])");
  }
  if (colon == std::string::npos) {
    throw std::invalid_argument("agent '" + text + "' needs sims=N");
  }
  bool have_sims = false;
  std::istringstream options(text.substr(colon + 1));
  for (std::string option; std::getline(options, option, ',');) {
    const auto eq = option.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("malformed agent option '" + option + "'");
    }
    const std::string key = option.substr(0, eq);
    const std::string value = option.substr(eq + 1);
    std::size_t used = 0;
    try {
      if (key == "sims") {
        agent.search.n_simulations = std::stoi(value, &used);
        have_sims = true;
      } else if (key == "c") {
        agent.search.exploration_constant = std::stod(value, &used);
      } else {
        throw std::invalid_argument("unknown agent option '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw std::invalid_argument("bad value in agent option '" + option + "'");
    }
    if (used != value.size()) {
      throw std::invalid_argument("bad value in agent option '" + option + "'");
    }
  }
  if (!have_sims) throw std::invalid_argument("agent '" + text + "' needs sims=N");
  agent.search.Validate();
  return agent;
}

std::string AgentSpec::ToString() const {
  if (kind == Kind::kRandom) return "random";
  std::string out = kind == Kind::kMcts ? "mcts" : "ismcts";
  out += ":sims=" + std::to_string(search.n_simulations);
  if (search.exploration_constant != SearchConfig().exploration_constant) {
    out += ",c=" + FormatNumber(search.exploration_constant);
  }
  return out;
}

void AgentSpec::CheckCompatible(const GameSpec& spec) const {
  if (kind == Kind::kIsmcts && !spec.imperfect()) {
    throw std::invalid_argument("ismcts needs an imperfect-information game; " +
                                spec.name + " has perfect information");
  }
  if (kind == Kind::kMcts && spec.imperfect()) {
    throw std::invalid_argument("mcts needs a perfect-information game; " +
                                spec.name + " has imperfect information");
  }
}

Value MatchReport::ToValue() const {
  return {{"agent0", agent0},
          {"agent1", agent1},
          {"games_requested", games_requested},
          {"games_played", games_played},
          {"wins", wins},
          {"draws", draws},
          {"losses", losses},
          {"mean_rewards", mean_rewards},
          {"incomplete", incomplete},
          {"error", error.empty() ? Value(nullptr) : Value(error)}};
}

MatchReport PlayMatch(const SessionFactory& factory, const GameSpec& spec,
                      const AgentSpec& agent0, const AgentSpec& agent1,
                      int n_games, std::uint64_t seed) {
  agent0.CheckCompatible(spec);
  agent1.CheckCompatible(spec);
  if (spec.n_players != 2) {
    throw std::invalid_argument("matches need a two-player game");
  }
  MatchReport report;
  report.agent0 = agent0.ToString();
  report.agent1 = agent1.ToString();
  report.games_requested = n_games;
  std::array<double, 2> totals = {0.0, 0.0};

  for (int game = 0; game < n_games; ++game) {
    const std::uint64_t game_seed = DeriveSeed(seed, game);
    Rng rng(game_seed);
    const int seat_of_agent0 = game % 2;
    std::unique_ptr<Session> session;
    try {
      session = factory();
      WalkRecord walk = StartWalk(*session, spec);
      for (int move = 0;; ++move) {
        if (move >= spec.max_walk_steps) {
          throw SearchFailure("game exceeded " +
                              std::to_string(spec.max_walk_steps) + " moves");
        }
        const StateHandle state = walk.current().state;
        const PlayerId player = walk.current().acting_player;
        if (IsTerminalPlayer(player)) break;
        const auto legal = LegalActionsOf(*session, state);
        if (legal.empty()) {
          throw SearchFailure("non-terminal state without legal actions");
        }
        ActionId action;
        if (IsChanceNode(spec, player, legal)) {
          action = legal[UniformIndex(rng, legal.size())];
        } else {
          const AgentSpec& agent = player == seat_of_agent0 ? agent0 : agent1;
          SearchConfig search = agent.search;
          search.rng_seed = DeriveSeed(game_seed, move + 1);
          switch (agent.kind) {
            case AgentSpec::Kind::kRandom:
              action = legal[UniformIndex(rng, legal.size())];
              break;
            case AgentSpec::Kind::kMcts:
              action = MctsChoose(*session, spec, state, search);
              break;
            case AgentSpec::Kind::kIsmcts:
              action = IsmctsChoose(*session, spec, walk, player, search);
              break;
          }
        }
        AdvanceWalk(*session, spec, walk, action);
      }
      const auto rewards = RewardsOf(*session, walk.current().state, 2);
      session->Close();
      const double mine = rewards[seat_of_agent0];
      const double theirs = rewards[1 - seat_of_agent0];
      totals[0] += mine;
      totals[1] += theirs;
      ++report.games_played;
      if (mine > theirs) {
        ++report.wins;
      } else if (mine < theirs) {
        ++report.losses;
      } else {
        ++report.draws;
      }
    } catch (const std::runtime_error& e) {
      if (dynamic_cast<const HarnessError*>(&e) != nullptr) throw;
      if (session) session->Close();
      report.incomplete = true;
      report.error = "game " + std::to_string(game) + ": " + e.what();
      break;
    }
  }
  if (report.games_played > 0) {
    for (int i = 0; i < 2; ++i) {
      report.mean_rewards[i] = totals[i] / report.games_played;
    }
  }
  return report;
}

}  // namespace cwm
