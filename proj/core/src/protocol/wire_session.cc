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

#include "cwm/protocol/wire_session.h"

#include <algorithm>

#include "cwm/errors.h"

namespace cwm {
namespace {

std::string Dump(const Value& value) {
  return value.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::string Truncate(const std::string& text, std::size_t limit = 200) {
  return text.size() <= limit ? text : text.substr(0, limit) + "...";
}

}  // namespace

std::unique_ptr<WireSession> WireSession::Open(
    const std::vector<std::string>& argv, const std::string& candidate_path,
    const std::string& preamble, const WireOptions& options) {
  std::unique_ptr<WireSession> session(
      new WireSession(ChildProcess::Spawn(argv), options));
  try {
    const Value result = session->Call(
        "load", {{"path", candidate_path},
                 {"preamble", preamble},
                 {"protocol_version", kProtocolVersion}});
    session->info_ = SessionInfo::FromValue(result);
    if (result.contains("protocol_version") &&
        result["protocol_version"] != kProtocolVersion) {
      session->info_.load_ok = false;
      session->info_.load_error =
          "adapter speaks protocol_version " + result["protocol_version"].dump();
    }
  } catch (const TimeoutError& e) {
    session->info_.load_ok = false;
    session->info_.load_error = std::string("load handshake: ") + e.what();
  } catch (const CandidateError& e) {
    session->info_.load_ok = false;
    session->info_.load_error = e.what();
  }
  return session;
}

WireSession::WireSession(std::unique_ptr<ChildProcess> child,
                         WireOptions options)
    : child_(std::move(child)), options_(options) {}

WireSession::~WireSession() { Kill(); }

bool WireSession::alive() const { return !dead_ && child_->running(); }

void WireSession::Kill() {
  dead_ = true;
  child_->Kill();
}

void WireSession::Die(ErrorKind kind, const std::string& message) {
  Kill();
  throw CandidateError(kind, message);
}

Value WireSession::Call(const std::string& method, const Value& params) {
  if (!alive()) {
    throw CandidateError(ErrorKind::kSessionDead,
                         "session is dead; cannot call " + method);
  }
  const std::int64_t id = ++next_id_;
  const Value request = {{"id", id}, {"method", method}, {"params", params}};
  if (!child_->WriteLine(Dump(request))) {
    Die(ErrorKind::kSessionDead, "adapter closed its input during " + method);
  }

  const auto call_deadline = Deadline::After(options_.call_timeout);
  const bool overall_first =
      !options_.deadline.never() &&
      options_.deadline.RemainingOr(options_.call_timeout) <
          call_deadline.RemainingOr(options_.call_timeout);
  const Deadline& deadline = overall_first ? options_.deadline : call_deadline;

  std::string line;
  switch (child_->ReadLine(line, deadline)) {
    case ChildProcess::ReadStatus::kLine:
      break;
    case ChildProcess::ReadStatus::kTimeout:
      Kill();
      throw TimeoutError(method + " timed out" +
                         (overall_first ? " (evaluation deadline)"
                                        : " after " +
                                              std::to_string(
                                                  options_.call_timeout.count()) +
                                              " ms"));
    case ChildProcess::ReadStatus::kEof:
      Die(ErrorKind::kSessionDead, "adapter exited during " + method);
    case ChildProcess::ReadStatus::kOversize:
      Die(ErrorKind::kProtocolError,
          "response frame exceeds " + std::to_string(kMaxFrameBytes) +
              " bytes");
  }

  Value response;
  try {
    response = Value::parse(line);
  } catch (const nlohmann::json::exception&) {
    Die(ErrorKind::kProtocolError, "malformed frame: " + Truncate(line));
  }
  if (!response.is_object() || !response.contains("id") ||
      !response.contains("ok") || !response["ok"].is_boolean()) {
    Die(ErrorKind::kProtocolError, "malformed response: " + Truncate(line));
  }
  if (response["id"] != id) {
    Die(ErrorKind::kProtocolError, "response id " + response["id"].dump() +
                                       " does not match request id " +
                                       std::to_string(id));
  }
  if (response["ok"].get<bool>()) {
    if (!response.contains("result")) {
      Die(ErrorKind::kProtocolError, "ok response without result");
    }
    return response["result"];
  }
  const Value& error = response.value("error", Value::object());
  if (!error.is_object() || !error.contains("kind") ||
      !error["kind"].is_string()) {
    Die(ErrorKind::kProtocolError, "error response without kind: " +
                                       Truncate(line));
  }
  const ErrorKind kind = ErrorKindFromName(error["kind"].get<std::string>());
  const std::string message =
      error.contains("message") && error["message"].is_string()
          ? error["message"].get<std::string>()
          : std::string(ErrorKindName(kind));
  if (kind == ErrorKind::kTimeout) {
    Kill();
    throw TimeoutError(method + ": " + message);
  }
  if (kind == ErrorKind::kProtocolError) Die(kind, message);
  throw CandidateError(kind, message);
}

StateHandle WireSession::HandleOf(const Value& value, const char* what) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    Die(ErrorKind::kProtocolError,
        std::string(what) + " is not a state handle: " + Truncate(Dump(value)));
  }
  return StateHandle{value.get<std::int64_t>()};
}

InitialResult WireSession::InitialState() {
  const Value result = Call("initial_state", Value::object());
  if (!result.is_object() || !result.contains("state")) {
    Die(ErrorKind::kProtocolError, "initial_state result lacks state");
  }
  InitialResult out;
  out.state = HandleOf(result["state"], "initial_state result");
  out.state_type = result.value("state_type", std::string("map"));
  return out;
}

ApplyResult WireSession::ApplyAction(StateHandle state, const ActionId& action) {
  const Value result =
      Call("apply_action", {{"state", state.id}, {"action", action}});
  if (!result.is_object() || !result.contains("state") ||
      !result.value("input_mutated", Value()).is_boolean()) {
    Die(ErrorKind::kProtocolError, "malformed apply_action result");
  }
  return {HandleOf(result["state"], "apply_action result"),
          result["input_mutated"].get<bool>()};
}

Value WireSession::CurrentPlayer(StateHandle state) {
  return Call("current_player", {{"state", state.id}});
}

Value WireSession::LegalActions(StateHandle state) {
  return Call("legal_actions", {{"state", state.id}});
}

Value WireSession::Rewards(StateHandle state) {
  return Call("rewards", {{"state", state.id}});
}

Value WireSession::Observations(StateHandle state) {
  return Call("observations", {{"state", state.id}});
}

std::string WireSession::PlayerName(PlayerId player) {
  const Value result = Call("player_name", {{"player", player}});
  if (!result.is_string()) {
    throw CandidateError(ErrorKind::kShape,
                         "player_name returned " + Truncate(Dump(result)));
  }
  return result.get<std::string>();
}

Fingerprint WireSession::StateFingerprint(StateHandle state) {
  const Value result = Call("fingerprint", {{"state", state.id}});
  try {
    return Fingerprint(result.get<std::string>());
  } catch (const std::exception&) {
    Die(ErrorKind::kProtocolError,
        "fingerprint result is not a digest: " + Truncate(Dump(result)));
  }
}

Value WireSession::Resample(std::span<const ResampleRecord> records,
                            PlayerId player) {
  Value list = Value::array();
  for (const auto& r : records) {
    list.push_back({{"state", r.state.id},
                    {"action", r.action ? Value(*r.action) : Value(nullptr)}});
  }
  return Call("resample", {{"records", std::move(list)}, {"player", player}});
}

void WireSession::Close() {
  if (alive()) {
    const auto saved = options_.call_timeout;
    options_.call_timeout = std::min(saved, std::chrono::milliseconds(1000));
    try {
      Call("shutdown", Value::object());
    } catch (const std::exception&) {
    }
    options_.call_timeout = saved;
  }
  Kill();
}

}  // namespace cwm
