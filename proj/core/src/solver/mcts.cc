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

#include "cwm/solver/mcts.h"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <vector>

#include "cwm/errors.h"
#include "cwm/rng.h"

namespace cwm {
namespace {

struct Node {
  StateHandle state;
  PlayerId player = kTerminalPlayer;
  bool chance = false;
  std::vector<ActionId> actions;
  std::vector<int> children;  // -1 until expanded
  std::vector<int> untried;
  int visits = 0;
  // Reward sums for the player who moved into this node.
  double value = 0.0;
  int parent = -1;
  PlayerId mover = kChancePlayer;
};

class Uct {
 public:
  Uct(Session& session, const GameSpec& spec, const SearchConfig& config)
      : session_(session), spec_(spec), config_(config), rng_(config.rng_seed) {}

  SearchResult Search(StateHandle root) {
    AddNode(root, -1, kChancePlayer);
    if (nodes_[0].player == kTerminalPlayer || nodes_[0].actions.empty()) {
      throw SearchFailure("search root is terminal");
    }
    SearchResult result;
    if (nodes_[0].actions.size() > 1) {
      for (int i = 0; i < config_.n_simulations; ++i) {
        Simulate();
        ++result.simulations;
      }
    }
    const Node& root_node = nodes_[0];
    int best = 0;
    for (std::size_t a = 0; a < root_node.actions.size(); ++a) {
      const int child = root_node.children[a];
      const int visits = child < 0 ? 0 : nodes_[child].visits;
      result.root_visits[root_node.actions[a]] = visits;
      const int best_child = root_node.children[best];
      const int best_visits = best_child < 0 ? 0 : nodes_[best_child].visits;
      if (visits > best_visits) best = static_cast<int>(a);
    }
    result.action = root_node.actions[best];
    return result;
  }

 private:
  int AddNode(StateHandle state, int parent, PlayerId mover) {
    Node node;
    node.state = state;
    node.parent = parent;
    node.mover = mover;
    node.player = CurrentPlayerOf(session_, state);
    if (!IsTerminalPlayer(node.player)) {
      node.actions = LegalActionsOf(session_, state);
      node.chance = IsChanceNode(spec_, node.player, node.actions);
      node.children.assign(node.actions.size(), -1);
      for (std::size_t a = 0; a < node.actions.size(); ++a) {
        node.untried.push_back(static_cast<int>(a));
      }
    }
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
  }

  int Expand(int index, int a) {
    const StateHandle next =
        session_.ApplyAction(nodes_[index].state, nodes_[index].actions[a])
            .new_state;
    const PlayerId mover = nodes_[index].player;
    const int child = AddNode(next, index, mover);
    nodes_[index].children[a] = child;
    return child;
  }

  int SelectChild(int index) {
    const Node& node = nodes_[index];
    if (node.chance) {
      const int a = static_cast<int>(UniformIndex(rng_, node.actions.size()));
      return node.children[a] >= 0 ? node.children[a] : Expand(index, a);
    }
    const double log_n = std::log(static_cast<double>(node.visits));
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int child : node.children) {
      const Node& c = nodes_[child];
      const double score =
          c.value / c.visits +
          config_.exploration_constant * std::sqrt(log_n / c.visits);
      if (score > best_score) {
        best_score = score;
        best = child;
      }
    }
    return best;
  }

  std::vector<double> Rollout(StateHandle state) {
    for (int depth = 0; depth < config_.max_rollout_depth; ++depth) {
      const PlayerId player = CurrentPlayerOf(session_, state);
      if (IsTerminalPlayer(player)) break;
      const auto legal = LegalActionsOf(session_, state);
      if (legal.empty()) {
        throw SearchFailure("non-terminal state without legal actions");
      }
      state = session_
                  .ApplyAction(state, legal[UniformIndex(rng_, legal.size())])
                  .new_state;
    }
    if (!IsTerminalPlayer(CurrentPlayerOf(session_, state))) {
      return std::vector<double>(spec_.n_players, 0.0);
    }
    return RewardsOf(session_, state, spec_.n_players);
  }

  void Simulate() {
    int index = 0;
    for (;;) {
      Node& node = nodes_[index];
      if (IsTerminalPlayer(node.player)) break;
      if (!node.chance && !node.untried.empty()) {
        const std::size_t pick = UniformIndex(rng_, node.untried.size());
        const int a = node.untried[pick];
        node.untried.erase(node.untried.begin() + static_cast<long>(pick));
        index = Expand(index, a);
        break;
      }
      index = SelectChild(index);
    }
    const std::vector<double> rewards = Rollout(nodes_[index].state);
    for (int i = index; i >= 0; i = nodes_[i].parent) {
      Node& node = nodes_[i];
      ++node.visits;
      if (node.mover >= 0 && node.mover < spec_.n_players) {
        node.value += rewards[node.mover];
      }
    }
  }

  Session& session_;
  const GameSpec& spec_;
  const SearchConfig& config_;
  Rng rng_;
  std::vector<Node> nodes_;
};

struct EdgeStats {
  int visits = 0;
  int available = 0;
  double value = 0.0;
};

struct InfoNode {
  std::unordered_map<ActionId, EdgeStats> edges;
};

class SoIsmcts {
 public:
  SoIsmcts(Session& session, const GameSpec& spec, const WalkRecord& walk,
           PlayerId player, const SearchConfig& config)
      : session_(session),
        spec_(spec),
        walk_(walk),
        player_(player),
        config_(config),
        rng_(config.rng_seed) {}

  SearchResult Search() {
    const StateHandle root = walk_.current().state;
    const PlayerId to_act = CurrentPlayerOf(session_, root);
    if (to_act != player_) {
      throw SearchFailure("it is not player " + std::to_string(player_) +
                          "'s turn");
    }
    const auto root_actions = LegalActionsOf(session_, root);
    if (root_actions.empty()) throw SearchFailure("search root is terminal");
    SearchResult result;
    result.action = root_actions.front();
    for (const auto& a : root_actions) result.root_visits[a] = 0;
    if (root_actions.size() == 1) return result;

    const std::string root_key =
        walk_.current().observations.at(player_).hex() + ":" +
        std::to_string(player_);
    for (int i = 0; i < config_.n_simulations; ++i) {
      ++result.simulations;
      std::optional<StateHandle> determinized = Determinize();
      if (!determinized) {
        ++result.failed_determinizations;
        continue;
      }
      Iterate(*determinized);
    }
    if (2 * result.failed_determinizations > result.simulations) {
      throw SearchFailure(std::to_string(result.failed_determinizations) +
                          " of " + std::to_string(result.simulations) +
                          " determinizations failed" +
                          (first_failure_.empty() ? "" : ": " + first_failure_));
    }
    const InfoNode& node = tree_[root_key];
    int best_visits = -1;
    for (const auto& a : root_actions) {
      auto it = node.edges.find(a);
      const int visits = it == node.edges.end() ? 0 : it->second.visits;
      result.root_visits[a] = visits;
      if (visits > best_visits) {
        best_visits = visits;
        result.action = a;
      }
    }
    return result;
  }

 private:
  void NoteFailure(const std::string& message) {
    if (first_failure_.empty()) first_failure_ = message;
  }

  std::optional<StateHandle> Determinize() {
    try {
      const std::vector<ActionId> trajectory =
          ResampleFor(session_, walk_, player_);
      StateHandle state = session_.InitialState().state;
      for (const ActionId& action : trajectory) {
        const auto legal = LegalActionsOf(session_, state);
        if (std::find(legal.begin(), legal.end(), action) == legal.end()) {
          NoteFailure("resampled action '" + action + "' is illegal");
          return std::nullopt;
        }
        state = session_.ApplyAction(state, action).new_state;
      }
      if (CurrentPlayerOf(session_, state) != player_ ||
          ObservationKey(state) != walk_.current().observations.at(player_)) {
        NoteFailure("resampled history does not reach the observed state");
        return std::nullopt;
      }
      return state;
    } catch (const CandidateError& e) {
      NoteFailure(e.what());
      return std::nullopt;
    }
  }

  Fingerprint ObservationKey(StateHandle state) {
    return CanonicalFingerprint(
        ObservationsOf(session_, state, spec_.n_players).at(player_));
  }

  struct Step {
    InfoNode* node;
    ActionId action;
    PlayerId actor;
  };

  void Iterate(StateHandle state) {
    std::vector<Step> path;
    bool expanded = false;
    std::vector<double> rewards;
    for (int depth = 0;; ++depth) {
      const PlayerId actor = CurrentPlayerOf(session_, state);
      if (IsTerminalPlayer(actor)) {
        rewards = RewardsOf(session_, state, spec_.n_players);
        break;
      }
      if (depth >= config_.max_rollout_depth) {
        rewards.assign(spec_.n_players, 0.0);
        break;
      }
      const auto legal = LegalActionsOf(session_, state);
      if (legal.empty()) {
        throw SearchFailure("non-terminal state without legal actions");
      }
      ActionId action;
      if (IsChanceNode(spec_, actor, legal) || expanded) {
        action = legal[UniformIndex(rng_, legal.size())];
      } else {
        const std::string key =
            ObservationKey(state).hex() + ":" + std::to_string(actor);
        InfoNode& node = tree_[key];
        std::vector<const ActionId*> untried;
        for (const auto& a : legal) {
          auto it = node.edges.find(a);
          if (it == node.edges.end() || it->second.visits == 0) {
            untried.push_back(&a);
          }
        }
        if (!untried.empty()) {
          action = *untried[UniformIndex(rng_, untried.size())];
          expanded = true;
        } else {
          double best_score = -std::numeric_limits<double>::infinity();
          for (const auto& a : legal) {
            const EdgeStats& e = node.edges[a];
            const double score =
                e.value / e.visits +
                config_.exploration_constant *
                    std::sqrt(std::log(static_cast<double>(
                                  std::max(e.available, 1))) /
                              e.visits);
            if (score > best_score) {
              best_score = score;
              action = a;
            }
          }
        }
        for (const auto& a : legal) ++node.edges[a].available;
        path.push_back({&node, action, actor});
      }
      state = session_.ApplyAction(state, action).new_state;
    }
    for (const Step& step : path) {
      EdgeStats& e = step.node->edges[step.action];
      ++e.visits;
      e.value += rewards.at(step.actor);
    }
  }

  Session& session_;
  const GameSpec& spec_;
  const WalkRecord& walk_;
  const PlayerId player_;
  const SearchConfig& config_;
  Rng rng_;
  std::unordered_map<std::string, InfoNode> tree_;
  std::string first_failure_;
};

}  // namespace

void SearchConfig::Validate() const {
  if (n_simulations < 1) {
    throw std::invalid_argument("n_simulations must be at least 1");
  }
  if (!(exploration_constant >= 0)) {
    throw std::invalid_argument("exploration constant must be non-negative");
  }
  if (max_rollout_depth < 1) {
    throw std::invalid_argument("max_rollout_depth must be at least 1");
  }
}

SearchResult MctsSearch(Session& session, const GameSpec& spec,
                        StateHandle root, const SearchConfig& config) {
  config.Validate();
  try {
    return Uct(session, spec, config).Search(root);
  } catch (const CandidateError& e) {
    throw SearchFailure(std::string("candidate fault during search: ") +
                        e.what());
  }
}

ActionId MctsChoose(Session& session, const GameSpec& spec, StateHandle root,
                    const SearchConfig& config) {
  return MctsSearch(session, spec, root, config).action;
}

SearchResult IsmctsSearch(Session& session, const GameSpec& spec,
                          const WalkRecord& walk, PlayerId player,
                          const SearchConfig& config) {
  config.Validate();
  try {
    return SoIsmcts(session, spec, walk, player, config).Search();
  } catch (const CandidateError& e) {
    throw SearchFailure(std::string("candidate fault during search: ") +
                        e.what());
  }
}

ActionId IsmctsChoose(Session& session, const GameSpec& spec,
                      const WalkRecord& walk, PlayerId player,
                      const SearchConfig& config) {
  return IsmctsSearch(session, spec, walk, player, config).action;
}

}  // namespace cwm
