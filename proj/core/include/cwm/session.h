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

#ifndef CWM_SESSION_H_
#define CWM_SESSION_H_

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cwm/value.h"

namespace cwm {

// Session-unique reference to a state living on the candidate side.
struct StateHandle {
  std::int64_t id = -1;

  friend bool operator==(const StateHandle&, const StateHandle&) = default;
  friend auto operator<=>(const StateHandle&, const StateHandle&) = default;
};

inline constexpr std::array<std::string_view, 8> kApiFunctions = {
    "initial_state", "apply_action",  "current_player", "rewards",
    "legal_actions", "observations",  "player_name",    "resample_history"};

// The functions Tier 1 requires for API completeness.
inline constexpr std::array<std::string_view, 6> kCoreApiFunctions = {
    "initial_state", "apply_action", "current_player",
    "rewards",       "legal_actions", "observations"};

struct SessionInfo {
  bool load_ok = false;
  std::optional<std::string> load_error;
  std::map<std::string, bool> api_present;
  std::optional<std::string> resample_source;

  bool Has(std::string_view function) const;
  bool CoreApiComplete() const;

  Value ToValue() const;
  static SessionInfo FromValue(const Value& value);
};

struct InitialResult {
  StateHandle state;
  // ValueKindName of the state content ("map" for a well-formed state).
  std::string state_type;
};

struct ApplyResult {
  StateHandle new_state;
  bool input_mutated = false;
};

struct ResampleRecord {
  StateHandle state;
  std::optional<ActionId> action;
};

// One live candidate game engine. Implementations: InProcessSession
// (reference games and mutants) and WireSession (supervised subprocess).
//
// Candidate faults surface as CandidateError; timeouts as TimeoutError.
// Sessions are strictly sequential and not thread-safe.
class Session {
 public:
  virtual ~Session() = default;

  virtual SessionInfo Info() = 0;
  virtual InitialResult InitialState() = 0;
  virtual ApplyResult ApplyAction(StateHandle state, const ActionId& action) = 0;

  // Raw return values; shape is checked by the typed accessors below so that
  // Tier 1 can score ill-typed candidates.
  virtual Value CurrentPlayer(StateHandle state) = 0;
  virtual Value LegalActions(StateHandle state) = 0;
  virtual Value Rewards(StateHandle state) = 0;
  virtual Value Observations(StateHandle state) = 0;

  virtual std::string PlayerName(PlayerId player) = 0;
  virtual Fingerprint StateFingerprint(StateHandle state) = 0;
  virtual Value Resample(std::span<const ResampleRecord> records,
                         PlayerId player) = 0;

  virtual void Close() = 0;
  virtual bool alive() const = 0;
};

using SessionFactory = std::function<std::unique_ptr<Session>()>;

bool IsStringList(const Value& value);
bool IsNumberList(const Value& value);
bool IsInteger(const Value& value);

// Typed accessors. Ill-shaped results throw CandidateError(kShape).
PlayerId CurrentPlayerOf(Session& session, StateHandle state);
std::vector<ActionId> LegalActionsOf(Session& session, StateHandle state);
std::vector<double> RewardsOf(Session& session, StateHandle state,
                              int n_players);
std::vector<Value> ObservationsOf(Session& session, StateHandle state,
                                  int n_players);
std::vector<ActionId> ActionListOf(const Value& value, std::string_view what);

// Falls back to "player-<id>" when the candidate lacks player_name or fails.
std::string PlayerNameOr(Session& session, PlayerId player);

}  // namespace cwm

#endif  // CWM_SESSION_H_
