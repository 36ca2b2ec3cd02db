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

#include "cwm/protocol/adapter_server.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cwm/errors.h"
#include "cwm/protocol/wire_session.h"
#include "cwm/registry.h"

namespace cwm {
namespace {

std::string Dump(const Value& value) {
  return value.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

// A program that failed to load; only its manifest is ever consulted.
class UnloadedProgram final : public GameProgram {
 public:
  explicit UnloadedProgram(std::string error) {
    manifest_.load_ok = false;
    manifest_.load_error = std::move(error);
  }
  ProgramManifest Manifest() const override { return manifest_; }
  std::unique_ptr<ProgramState> InitialState() override {
    throw std::logic_error("not loaded");
  }
  std::unique_ptr<ProgramState> ApplyAction(ProgramState&,
                                            const ActionId&) override {
    throw std::logic_error("not loaded");
  }
  Value CurrentPlayer(const ProgramState&) override {
    throw std::logic_error("not loaded");
  }
  Value LegalActions(const ProgramState&) override {
    throw std::logic_error("not loaded");
  }
  Value Rewards(const ProgramState&) override {
    throw std::logic_error("not loaded");
  }
  Value Observations(const ProgramState&) override {
    throw std::logic_error("not loaded");
  }

 private:
  ProgramManifest manifest_;
};

StateHandle StateParam(const Value& params) {
  const Value& state = params.at("state");
  if (!state.is_number_integer()) {
    throw CandidateError(ErrorKind::kProtocolError, "state must be an integer");
  }
  return StateHandle{state.get<std::int64_t>()};
}

}  // namespace

AdapterServer::AdapterServer(ProgramLoader loader)
    : loader_(std::move(loader)) {}

Value AdapterServer::Dispatch(const std::string& method, const Value& params) {
  if (method == "load") {
    if (session_) {
      throw CandidateError(ErrorKind::kProtocolError, "already loaded");
    }
    std::shared_ptr<GameProgram> program;
    try {
      program = loader_(params.at("path").get<std::string>(),
                        params.value("preamble", std::string()));
    } catch (const std::exception& e) {
      program = std::make_shared<UnloadedProgram>(std::string(e.what()));
    }
    session_ = std::make_unique<InProcessSession>(std::move(program));
    Value info = session_->Info().ToValue();
    info["protocol_version"] = kProtocolVersion;
    return info;
  }
  if (method == "shutdown") {
    shut_down_ = true;
    return nullptr;
  }
  if (!session_) {
    throw CandidateError(ErrorKind::kProtocolError,
                         "'" + method + "' before load");
  }
  Session& s = *session_;
  if (method == "info") return s.Info().ToValue();
  if (method == "initial_state") {
    const InitialResult r = s.InitialState();
    return {{"state", r.state.id}, {"state_type", r.state_type}};
  }
  if (method == "apply_action") {
    const ApplyResult r = s.ApplyAction(
        StateParam(params), params.at("action").get<std::string>());
    return {{"state", r.new_state.id}, {"input_mutated", r.input_mutated}};
  }
  if (method == "current_player") return s.CurrentPlayer(StateParam(params));
  if (method == "legal_actions") return s.LegalActions(StateParam(params));
  if (method == "rewards") return s.Rewards(StateParam(params));
  if (method == "observations") {
    return Canonicalize(s.Observations(StateParam(params)));
  }
  if (method == "player_name") {
    return s.PlayerName(params.at("player").get<PlayerId>());
  }
  if (method == "fingerprint") {
    return s.StateFingerprint(StateParam(params)).hex();
  }
  if (method == "resample") {
    std::vector<ResampleRecord> records;
    for (const Value& r : params.at("records")) {
      ResampleRecord record;
      record.state = StateParam(r);
      if (r.contains("action") && r["action"].is_string()) {
        record.action = r["action"].get<std::string>();
      }
      records.push_back(std::move(record));
    }
    return s.Resample(records, params.at("player").get<PlayerId>());
  }
  throw CandidateError(ErrorKind::kProtocolError,
                       "unknown method '" + method + "'");
}

std::string AdapterServer::Handle(const std::string& frame) {
  if (shut_down_) return {};
  Value id = nullptr;
  Value response;
  try {
    const Value request = Value::parse(frame);
    if (!request.is_object() || !request.contains("method") ||
        !request["method"].is_string()) {
      throw CandidateError(ErrorKind::kProtocolError, "malformed request");
    }
    id = request.value("id", Value());
    const Value params = request.value("params", Value::object());
    response = {{"id", id},
                {"ok", true},
                {"result", Dispatch(request["method"].get<std::string>(),
                                    params)}};
  } catch (const CandidateError& e) {
    response = {{"id", id},
                {"ok", false},
                {"error",
                 {{"kind", std::string(ErrorKindName(e.kind()))},
                  {"message", e.what()}}}};
  } catch (const std::exception& e) {
    response = {{"id", id},
                {"ok", false},
                {"error", {{"kind", "protocol_error"}, {"message", e.what()}}}};
  }
  return Dump(response);
}

void AdapterServer::Serve(std::istream& in, std::ostream& out) {
  std::string line;
  while (!shut_down_ && std::getline(in, line)) {
    if (line.empty()) continue;
    out << Handle(line) << '\n' << std::flush;
  }
}

std::shared_ptr<GameProgram> LoadBuiltinDescriptor(const std::string& path,
                                                   const std::string&) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("FileNotFoundError: No such file: '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  Value descriptor;
  try {
    descriptor = Value::parse(text.str());
  } catch (const nlohmann::json::exception&) {
    throw std::runtime_error("SyntaxError: " + path +
                             " is not a builtin candidate descriptor");
  }
  if (!descriptor.is_object() || !descriptor.contains("builtin") ||
      !descriptor["builtin"].is_string()) {
    throw std::runtime_error(path + ": descriptor lacks \"builtin\"");
  }
  const std::string name = descriptor["builtin"].get<std::string>();
  const std::string game = descriptor.value("game", name);
  return MakeBuiltinProgram(name, MakeGame(game));
}

}  // namespace cwm
