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

#ifndef CWM_TIER_INFORMATION_H_
#define CWM_TIER_INFORMATION_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cwm/game_spec.h"
#include "cwm/session.h"
#include "cwm/tier_report.h"
#include "cwm/walk.h"

namespace cwm {

inline constexpr std::array<std::string_view, 4> kInformationChecks = {
    "resample_legal", "obs_reconstruction", "action_consistency",
    "resample_complete"};

struct ProbeConfig {
  int n_probes = 100;
  // 0 defers to GameSpec::max_walk_steps.
  int max_walk_steps = 0;
  std::uint64_t rng_seed = 42;

  void Validate() const;
};

struct ProbeOutcome {
  bool resample_legal = true;
  bool obs_reconstruction = true;
  bool action_consistency = true;
  bool resample_complete = true;
  std::string failure;

  bool all() const {
    return resample_legal && obs_reconstruction && action_consistency &&
           resample_complete;
  }
};

// Replays `trajectory` from a fresh initial state against `walk`, the
// probed player's recorded history. The history is the player's (observation,
// action) at each of their turns plus the observation at the walk's final
// state; turns the replay never reaches fail obs_reconstruction,
// action_consistency and resample_complete.
ProbeOutcome CheckResampledTrajectory(Session& session, const GameSpec& spec,
                                      const WalkRecord& walk, PlayerId player,
                                      const std::vector<ActionId>& trajectory);

// Tier 4: resample_legal, obs_reconstruction, action_consistency,
// resample_complete, each true iff it held on every probe. Probe i walks to a
// terminal state (or the cap), cuts the walk at a uniform index and probes
// player i % n_players. All false when resample_history is absent.
TierReport RunInformation(const SessionFactory& factory,
                          const ProbeConfig& config, const GameSpec& spec);

struct StubVerdict {
  bool stub = false;
  std::vector<std::string> returns;
  std::optional<std::string> diagnostic;
};

// Syntactic stub check over Python resampler source. A stub's every return
// expression is an empty list, a constant list literal, or a bare echo
// comprehension over the first parameter. Comments and docstrings are
// ignored. Unavailable or unparsable source is not a stub (with diagnostic).
StubVerdict DetectStub(std::optional<std::string_view> source);
inline bool IsStubSource(std::string_view source) {
  return DetectStub(source).stub;
}

}  // namespace cwm

#endif  // CWM_TIER_INFORMATION_H_
