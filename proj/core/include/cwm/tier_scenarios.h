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

#ifndef CWM_TIER_SCENARIOS_H_
#define CWM_TIER_SCENARIOS_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cwm/game_spec.h"
#include "cwm/session.h"
#include "cwm/tier_report.h"
#include "cwm/value.h"

namespace cwm {

inline constexpr int kScenarioFormatVersion = 1;

struct ScenarioChecks {
  std::optional<bool> terminal;
  std::optional<PlayerId> current_player;
  std::optional<std::vector<int>> rewards_sign;
  std::optional<PlayerId> winner;
  // Must NOT be legal at the end state.
  std::optional<ActionId> illegal_next;

  bool empty() const;
  friend bool operator==(const ScenarioChecks&, const ScenarioChecks&) = default;
};

struct Scenario {
  std::string name;
  std::vector<ActionId> actions;
  ScenarioChecks checks;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ScenarioFile {
  int format_version = kScenarioFormatVersion;
  std::string game;
  std::vector<Scenario> scenarios;

  Value ToValue() const;
};

// `line`/`column` are 1-based and 0 when the error is not positional.
class ScenarioParseError : public std::runtime_error {
 public:
  ScenarioParseError(const std::string& message, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Parses and validates a scenario document:
//   {"format_version": 1, "game": NAME,
//    "scenarios": [{"name": ..., "actions": [...], "checks": {...}}]}
// The game must be registered; rewards_sign length must equal its player
// count. Throws ScenarioParseError.
ScenarioFile ParseScenarios(std::string_view text);
ScenarioFile LoadScenarioFile(const std::string& path);

// Tier 3: one check per scenario, each replayed from a fresh initial state.
// Every action must be legal immediately before it is applied. Winner means
// the strict unique reward maximum. TimeoutError propagates.
TierReport RunScenarios(const SessionFactory& factory, const ScenarioFile& file,
                        const GameSpec& spec);

}  // namespace cwm

#endif  // CWM_TIER_SCENARIOS_H_
