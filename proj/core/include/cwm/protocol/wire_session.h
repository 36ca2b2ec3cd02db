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

#ifndef CWM_PROTOCOL_WIRE_SESSION_H_
#define CWM_PROTOCOL_WIRE_SESSION_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cwm/deadline.h"
#include "cwm/errors.h"
#include "cwm/protocol/child_process.h"
#include "cwm/session.h"

namespace cwm {

inline constexpr int kProtocolVersion = 1;

struct WireOptions {
  std::chrono::milliseconds call_timeout{5000};
  // Bounds every call of the session on top of call_timeout.
  Deadline deadline = Deadline::Never();
};

// Session over newline-delimited JSON frames to an adapter subprocess:
//   request  {"id": N, "method": M, "params": {...}}
//   response {"id": N, "ok": true, "result": R}
//          | {"id": N, "ok": false, "error": {"kind": K, "message": S}}
// Ids strictly increase; one request is in flight at a time. A timeout kills
// the child and raises TimeoutError; a malformed or mismatched frame kills it
// and raises CandidateError(kProtocolError). Afterwards every call raises
// kSessionDead.
class WireSession final : public Session {
 public:
  // Spawns `argv` and performs the load handshake. A handshake timeout or
  // failure yields a session whose Info() reports load_ok false. Throws
  // SpawnError when the adapter cannot be executed.
  static std::unique_ptr<WireSession> Open(const std::vector<std::string>& argv,
                                           const std::string& candidate_path,
                                           const std::string& preamble,
                                           const WireOptions& options = {});

  ~WireSession() override;

  SessionInfo Info() override { return info_; }
  InitialResult InitialState() override;
  ApplyResult ApplyAction(StateHandle state, const ActionId& action) override;
  Value CurrentPlayer(StateHandle state) override;
  Value LegalActions(StateHandle state) override;
  Value Rewards(StateHandle state) override;
  Value Observations(StateHandle state) override;
  std::string PlayerName(PlayerId player) override;
  Fingerprint StateFingerprint(StateHandle state) override;
  Value Resample(std::span<const ResampleRecord> records,
                 PlayerId player) override;
  void Close() override;
  bool alive() const override;

  // Raw request/response exchange; returns the result of an ok response.
  Value Call(const std::string& method, const Value& params);
  // Kills the child; later calls raise kSessionDead.
  void Kill();
  ChildProcess* child() { return child_.get(); }

 private:
  WireSession(std::unique_ptr<ChildProcess> child, WireOptions options);
  [[noreturn]] void Die(ErrorKind kind, const std::string& message);
  StateHandle HandleOf(const Value& value, const char* what);

  std::unique_ptr<ChildProcess> child_;
  WireOptions options_;
  SessionInfo info_;
  std::int64_t next_id_ = 0;
  bool dead_ = false;
};

}  // namespace cwm

#endif  // CWM_PROTOCOL_WIRE_SESSION_H_
