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

#include "cwm/walk.h"

#include "cwm/errors.h"

namespace cwm {

WalkRecord WalkRecord::Truncated(std::size_t index) const {
  WalkRecord out;
  out.steps.assign(steps.begin(), steps.begin() + index + 1);
  out.steps.back().action.reset();
  return out;
}

std::vector<ActionId> WalkRecord::Actions() const {
  std::vector<ActionId> out;
  for (const auto& step : steps) {
    if (step.action) out.push_back(*step.action);
  }
  return out;
}

WalkStep RecordStep(Session& session, const GameSpec& spec, StateHandle state) {
  WalkStep step;
  step.state = state;
  step.acting_player = CurrentPlayerOf(session, state);
  for (const Value& obs : ObservationsOf(session, state, spec.n_players)) {
    step.observations.push_back(CanonicalFingerprint(obs));
  }
  return step;
}

WalkRecord StartWalk(Session& session, const GameSpec& spec) {
  WalkRecord walk;
  walk.steps.push_back(
      RecordStep(session, spec, session.InitialState().state));
  return walk;
}

void AdvanceWalk(Session& session, const GameSpec& spec, WalkRecord& walk,
                 const ActionId& action) {
  const ApplyResult result = session.ApplyAction(walk.current().state, action);
  walk.steps.back().action = action;
  walk.steps.push_back(RecordStep(session, spec, result.new_state));
}

std::vector<ResampleRecord> ResampleRecordsFor(const WalkRecord& walk,
                                               PlayerId player) {
  std::vector<ResampleRecord> records;
  for (std::size_t i = 0; i + 1 < walk.steps.size(); ++i) {
    const WalkStep& step = walk.steps[i];
    if (step.acting_player == player && step.action) {
      records.push_back({step.state, step.action});
    }
  }
  records.push_back({walk.current().state, std::nullopt});
  return records;
}

std::vector<ActionId> ResampleFor(Session& session, const WalkRecord& walk,
                                  PlayerId player) {
  const auto records = ResampleRecordsFor(walk, player);
  return ActionListOf(session.Resample(records, player), "resample_history");
}

}  // namespace cwm
