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

#ifndef CWM_TIER_DYNAMICS_H_
#define CWM_TIER_DYNAMICS_H_

#include <array>
#include <cstdint>
#include <string_view>

#include "cwm/game_spec.h"
#include "cwm/session.h"
#include "cwm/tier_report.h"

namespace cwm {

inline constexpr std::array<std::string_view, 4> kDynamicsChecks = {
    "no_crash", "immutable", "deterministic", "terminal_empty"};

struct FuzzConfig {
  int n_trajectories = 100;
  // 0 defers to GameSpec::max_walk_steps.
  int max_walk_steps = 0;
  std::uint64_t rng_seed = 42;

  void Validate() const;
};

// Tier 2: uniform random walks scoring
//   no_crash, immutable, deterministic, terminal_empty,
// each true iff it held on every walk. A non-terminal state without legal
// actions fails no_crash. Determinism re-applies one uniformly drawn
// non-chance (state, action) pair per walk once the walk is over, skipping
// pairs whose input was mutated by the first application.
//
// TimeoutError propagates.
TierReport RunDynamics(const SessionFactory& factory, const FuzzConfig& config,
                       const GameSpec& spec);

}  // namespace cwm

#endif  // CWM_TIER_DYNAMICS_H_
