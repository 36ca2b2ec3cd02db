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

#include "cwm/session.h"

#include <algorithm>

#include "cwm/errors.h"

namespace cwm {

bool SessionInfo::Has(std::string_view function) const {
  auto it = api_present.find(std::string(function));
  return it != api_present.end() && it->second;
}

bool SessionInfo::CoreApiComplete() const {
  return std::all_of(kCoreApiFunctions.begin(), kCoreApiFunctions.end(),
                     [&](std::string_view f) { return Has(f); });
}

Value SessionInfo::ToValue() const {
  Value out = Value::object();
  out["load_ok"] = load_ok;
  out["load_error"] = load_error ? Value(*load_error) : Value(nullptr);
  out["api_present"] = Value::object();
  for (const auto& [name, present] : api_present) {
    out["api_present"][name] = present;
  }
  out["resample_source"] =
      resample_source ? Value(*resample_source) : Value(nullptr);
  return out;
}

SessionInfo SessionInfo::FromValue(const Value& value) {
  if (!value.is_object() || !value.contains("load_ok") ||
      !value["load_ok"].is_boolean()) {
    throw CandidateError(ErrorKind::kProtocolError,
                         "malformed session info: " + value.dump());
  }
  SessionInfo info;
  info.load_ok = value["load_ok"].get<bool>();
  if (value.contains("load_error") && value["load_error"].is_string()) {
    info.load_error = value["load_error"].get<std::string>();
  }
  if (value.contains("api_present") && value["api_present"].is_object()) {
    for (const auto& [name, present] : value["api_present"].items()) {
      info.api_present[name] = present.is_boolean() && present.get<bool>();
    }
  }
  if (value.contains("resample_source") &&
      value["resample_source"].is_string()) {
    info.resample_source = value["resample_source"].get<std::string>();
  }
  return info;
}

bool IsStringList(const Value& value) {
  return value.is_array() &&
         std::all_of(value.begin(), value.end(),
                     [](const Value& v) { return v.is_string(); });
}

bool IsNumberList(const Value& value) {
  return value.is_array() &&
         std::all_of(value.begin(), value.end(),
                     [](const Value& v) { return v.is_number(); });
}

bool IsInteger(const Value& value) {
  return value.is_number_integer();
}

PlayerId CurrentPlayerOf(Session& session, StateHandle state) {
  Value raw = session.CurrentPlayer(state);
  if (!IsInteger(raw)) {
    throw CandidateError(ErrorKind::kShape,
                         "current_player returned non-integer " + raw.dump());
  }
  return raw.get<PlayerId>();
}

std::vector<ActionId> ActionListOf(const Value& value, std::string_view what) {
  if (!IsStringList(value)) {
    throw CandidateError(ErrorKind::kShape, std::string(what) +
                                                " returned non-string-list " +
                                                value.dump());
  }
  return value.get<std::vector<ActionId>>();
}

std::vector<ActionId> LegalActionsOf(Session& session, StateHandle state) {
  return ActionListOf(session.LegalActions(state), "legal_actions");
}

std::vector<double> RewardsOf(Session& session, StateHandle state,
                              int n_players) {
  Value raw = session.Rewards(state);
  if (!IsNumberList(raw) || static_cast<int>(raw.size()) != n_players) {
    throw CandidateError(ErrorKind::kShape,
                         "rewards returned " + raw.dump() + ", expected " +
                             std::to_string(n_players) + " numbers");
  }
  return raw.get<std::vector<double>>();
}

std::vector<Value> ObservationsOf(Session& session, StateHandle state,
                                  int n_players) {
  Value raw = session.Observations(state);
  if (!raw.is_array() || static_cast<int>(raw.size()) != n_players) {
    throw CandidateError(ErrorKind::kShape,
                         "observations must be a list of " +
                             std::to_string(n_players) + " entries");
  }
  return raw.get<std::vector<Value>>();
}

std::string PlayerNameOr(Session& session, PlayerId player) {
  const std::string fallback = "player-" + std::to_string(player);
  try {
    std::string name = session.PlayerName(player);
    return name.empty() ? fallback : name;
  } catch (const CandidateError&) {
    return fallback;
  }
}

}  // namespace cwm
