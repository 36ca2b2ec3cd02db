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

#ifndef CWM_WALK_H_
#define CWM_WALK_H_

#include <optional>
#include <vector>

#include "cwm/game_spec.h"
#include "cwm/session.h"
#include "cwm/value.h"

namespace cwm {

struct WalkStep {
  StateHandle state;
  PlayerId acting_player = kChancePlayer;
  // Action taken from `state`; empty for the walk's current (last) state.
  std::optional<ActionId> action;
  // Per-player observation fingerprints at `state`.
  std::vector<Fingerprint> observations;
};

// A play-ordered record of states visited from a fresh initial state.
// Observations are requested at every step, which lets adapters cache the
// candidate's native observation objects for resample_history.
struct WalkRecord {
  std::vector<WalkStep> steps;

  const WalkStep& current() const { return steps.back(); }
  // Prefix ending at step `index` (its action cleared).
  WalkRecord Truncated(std::size_t index) const;
  std::vector<ActionId> Actions() const;
};

WalkStep RecordStep(Session& session, const GameSpec& spec, StateHandle state);
WalkRecord StartWalk(Session& session, const GameSpec& spec);
// Applies `action` to the current state and appends the successor.
void AdvanceWalk(Session& session, const GameSpec& spec, WalkRecord& walk,
                 const ActionId& action);

// (state, action) at each of `player`'s turns, then (current state, null).
std::vector<ResampleRecord> ResampleRecordsFor(const WalkRecord& walk,
                                               PlayerId player);

// Asks the candidate for a full trajectory explaining `player`'s history.
std::vector<ActionId> ResampleFor(Session& session, const WalkRecord& walk,
                                  PlayerId player);

}  // namespace cwm

#endif  // CWM_WALK_H_
