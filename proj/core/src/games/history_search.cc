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

#include "cwm/games/history_search.h"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace cwm::games {

const std::string_view kReferenceResamplerSource = R"PY(def resample_history(obs_action_history, player_id):
    """Depth-first search for a history consistent with every observation."""
    entries = [(obs, action) for obs, action in obs_action_history if action is not None]
    final_obs = obs_action_history[-1][0]

    def search(state, index, trajectory):
        player = get_current_player(state)
        if index == len(entries) and get_observations(state)[player_id] == final_obs:
            return trajectory
        if player == -4:
            return None
        if player == player_id:
            if index >= len(entries):
                return None
            obs, action = entries[index]
            if get_observations(state)[player_id] != obs:
                return None
            if action not in get_legal_actions(state):
                return None
            return search(apply_action(state, action), index + 1, trajectory + [action])
        actions = list(get_legal_actions(state))
        random.shuffle(actions)
        for action in actions:
            found = search(apply_action(state, action), index, trajectory + [action])
            if found is not None:
                return found
        return None

    result = search(get_initial_state(), 0, [])
    if result is None:
        raise ValueError("no history explains the observations")
    return result
)PY";

namespace {

constexpr int kNodeBudget = 1'000'000;

class Search {
 public:
  Search(GameProgram& program, const std::vector<HistoryEntry>& history,
         PlayerId player, Rng& rng)
      : program_(program), player_(player), rng_(rng) {
    for (const HistoryEntry& entry : history) {
      if (entry.action) entries_.push_back(&entry);
    }
    final_obs_ = &history.back().observation;
  }

  bool Run(const ProgramState& state) {
    if (++nodes_ > kNodeBudget) {
      throw std::runtime_error("resample search budget exhausted");
    }
    const int current = program_.CurrentPlayer(state).get<int>();
    if (index_ == entries_.size() && ObservationOf(state) == *final_obs_) {
      return true;
    }
    if (current == kTerminalPlayer) return false;
    std::vector<ActionId> legal =
        program_.LegalActions(state).get<std::vector<ActionId>>();
    if (current == player_) {
      if (index_ >= entries_.size()) return false;
      const HistoryEntry& entry = *entries_[index_];
      if (ObservationOf(state) != entry.observation) return false;
      if (std::find(legal.begin(), legal.end(), *entry.action) == legal.end()) {
        return false;
      }
      ++index_;
      if (Descend(state, *entry.action)) return true;
      --index_;
      return false;
    }
    for (std::size_t i = legal.size(); i > 1; --i) {
      std::swap(legal[i - 1], legal[UniformIndex(rng_, i)]);
    }
    for (const ActionId& action : legal) {
      if (Descend(state, action)) return true;
    }
    return false;
  }

  std::vector<ActionId> trajectory() const { return trajectory_; }

 private:
  bool Descend(const ProgramState& state, const ActionId& action) {
    auto copy = state.Clone();
    auto next = program_.ApplyAction(*copy, action);
    trajectory_.push_back(action);
    if (Run(*next)) return true;
    trajectory_.pop_back();
    return false;
  }

  Value ObservationOf(const ProgramState& state) {
    return program_.Observations(state)[player_];
  }

  GameProgram& program_;
  PlayerId player_;
  Rng& rng_;
  std::vector<const HistoryEntry*> entries_;
  const Value* final_obs_ = nullptr;
  std::size_t index_ = 0;
  int nodes_ = 0;
  std::vector<ActionId> trajectory_;
};

}  // namespace

std::vector<ActionId> SearchConsistentHistory(
    GameProgram& program, const std::vector<HistoryEntry>& history,
    PlayerId player, Rng& rng) {
  if (history.empty()) {
    throw std::invalid_argument("empty observation history");
  }
  Search search(program, history, player, rng);
  auto initial = program.InitialState();
  if (!search.Run(*initial)) {
    throw std::runtime_error("no history explains the observations");
  }
  return search.trajectory();
}

}  // namespace cwm::games
