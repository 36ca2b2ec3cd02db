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

#include "cwm/program.h"

#include <exception>
#include <utility>

#include "cwm/errors.h"

namespace cwm {
namespace {

// Runs a candidate call, translating foreign exceptions into crashes.
template <typename Fn>
auto Guard(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const CandidateError&) {
    throw;
  } catch (const TimeoutError&) {
    throw;
  } catch (const std::exception& e) {
    throw CandidateError(ErrorKind::kCrash, e.what());
  } catch (...) {
    throw CandidateError(ErrorKind::kCrash, "unknown exception");
  }
}

}  // namespace

ProgramManifest ProgramManifest::AllFunctions() {
  ProgramManifest m;
  for (std::string_view f : kApiFunctions) m.functions.emplace(f);
  return m;
}

std::string GameProgram::PlayerName(PlayerId player) {
  return "Player " + std::to_string(player);
}

Value GameProgram::ResampleHistory(const std::vector<HistoryEntry>&,
                                   PlayerId) {
  throw CandidateError(ErrorKind::kUnsupported,
                       "candidate has no resample_history");
}

InProcessSession::InProcessSession(std::shared_ptr<GameProgram> program)
    : program_(std::move(program)), manifest_(program_->Manifest()) {}

void InProcessSession::Require(const char* function) const {
  if (closed_) {
    throw CandidateError(ErrorKind::kSessionDead, "session closed");
  }
  if (!manifest_.load_ok) {
    throw CandidateError(ErrorKind::kLoadError,
                         manifest_.load_error.value_or("load failed"));
  }
  if (!manifest_.functions.contains(function)) {
    if (std::string_view(function) == "resample_history") {
      throw CandidateError(ErrorKind::kUnsupported,
                           "candidate has no resample_history");
    }
    throw CandidateError(
        ErrorKind::kCrash,
        std::string("AttributeError: module has no attribute '") + function +
            "'");
  }
}

ProgramState& InProcessSession::Lookup(StateHandle handle) {
  if (handle.id < 0 || handle.id >= static_cast<std::int64_t>(states_.size())) {
    throw CandidateError(ErrorKind::kProtocolError,
                         "unknown state handle " + std::to_string(handle.id));
  }
  ProgramState* state = states_[handle.id].get();
  if (state == nullptr) {
    throw CandidateError(ErrorKind::kCrash,
                         "TypeError: state is None");
  }
  return *state;
}

StateHandle InProcessSession::Store(std::unique_ptr<ProgramState> state) {
  states_.push_back(std::move(state));
  return StateHandle{static_cast<std::int64_t>(states_.size()) - 1};
}

SessionInfo InProcessSession::Info() {
  if (closed_) throw CandidateError(ErrorKind::kSessionDead, "session closed");
  SessionInfo info;
  info.load_ok = manifest_.load_ok;
  info.load_error = manifest_.load_error;
  for (std::string_view f : kApiFunctions) {
    info.api_present[std::string(f)] =
        manifest_.load_ok && manifest_.functions.contains(std::string(f));
  }
  info.resample_source = manifest_.resample_source;
  return info;
}

InitialResult InProcessSession::InitialState() {
  Require("initial_state");
  auto state = Guard([&] { return program_->InitialState(); });
  std::string type = "null";
  if (state) type = std::string(ValueKindName(Guard([&] { return state->ToValue(); })));
  return {Store(std::move(state)), type};
}

ApplyResult InProcessSession::ApplyAction(StateHandle handle,
                                          const ActionId& action) {
  Require("apply_action");
  ProgramState& input = Lookup(handle);
  const auto snapshot = input.Clone();
  auto next = Guard([&] { return program_->ApplyAction(input, action); });
  const bool mutated = !input.Equals(*snapshot);
  return {Store(std::move(next)), mutated};
}

Value InProcessSession::CurrentPlayer(StateHandle handle) {
  Require("current_player");
  ProgramState& state = Lookup(handle);
  return Guard([&] { return program_->CurrentPlayer(state); });
}

Value InProcessSession::LegalActions(StateHandle handle) {
  Require("legal_actions");
  ProgramState& state = Lookup(handle);
  return Guard([&] { return program_->LegalActions(state); });
}

Value InProcessSession::Rewards(StateHandle handle) {
  Require("rewards");
  ProgramState& state = Lookup(handle);
  return Guard([&] { return program_->Rewards(state); });
}

Value InProcessSession::Observations(StateHandle handle) {
  Require("observations");
  ProgramState& state = Lookup(handle);
  return Guard([&] { return program_->Observations(state); });
}

std::string InProcessSession::PlayerName(PlayerId player) {
  Require("player_name");
  return Guard([&] { return program_->PlayerName(player); });
}

Fingerprint InProcessSession::StateFingerprint(StateHandle handle) {
  if (closed_) throw CandidateError(ErrorKind::kSessionDead, "session closed");
  ProgramState& state = Lookup(handle);
  return Guard([&] { return CanonicalFingerprint(state.ToValue()); });
}

Value InProcessSession::Resample(std::span<const ResampleRecord> records,
                                 PlayerId player) {
  Require("resample_history");
  std::vector<HistoryEntry> history;
  history.reserve(records.size());
  for (const ResampleRecord& record : records) {
    ProgramState& state = Lookup(record.state);
    Value obs = Guard([&] { return program_->Observations(state); });
    if (!obs.is_array() || player < 0 ||
        player >= static_cast<PlayerId>(obs.size())) {
      throw CandidateError(ErrorKind::kCrash,
                           "IndexError: observation for player " +
                               std::to_string(player) + " unavailable");
    }
    history.push_back({obs[player], record.action});
  }
  return Guard([&] { return program_->ResampleHistory(history, player); });
}

void InProcessSession::Close() {
  closed_ = true;
  states_.clear();
}

}  // namespace cwm
