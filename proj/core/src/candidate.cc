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

#include "cwm/candidate.h"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "cwm/preamble.h"
#include "cwm/program.h"
#include "cwm/protocol/wire_session.h"

namespace cwm {

SessionFactory Candidate::Factory(const Deadline& deadline) const {
  auto opener = open;
  return [opener, deadline] { return opener(deadline); };
}

std::vector<std::string> SplitCommand(const std::string& command) {
  std::istringstream in(command);
  std::vector<std::string> argv;
  for (std::string word; in >> word;) argv.push_back(word);
  return argv;
}

std::vector<std::string> DefaultAdapterCommand() {
  if (const char* env = std::getenv("CWM_ADAPTER"); env && *env) {
    return SplitCommand(env);
  }
  return SplitCommand(kDefaultAdapter);
}

Candidate BuiltinCandidate(const std::string& name, const ReferenceGame& game) {
  MakeBuiltinProgram(name, game);
  Candidate candidate;
  candidate.descriptor = kBuiltinPrefix + name;
  candidate.in_process = true;
  candidate.open = [name, game](const Deadline&) -> std::unique_ptr<Session> {
    return std::make_unique<InProcessSession>(MakeBuiltinProgram(name, game));
  };
  return candidate;
}

Candidate AdapterCandidate(const std::string& path,
                           const AdapterOptions& adapter) {
  Candidate candidate;
  candidate.descriptor = path;
  candidate.in_process = false;
  const std::vector<std::string> argv =
      adapter.command.empty() ? DefaultAdapterCommand() : adapter.command;
  const std::string preamble =
      adapter.preamble.empty() ? std::string(kPreambleV1) : adapter.preamble;
  const auto call_timeout = adapter.call_timeout;
  candidate.open = [argv, path, preamble,
                    call_timeout](const Deadline& deadline)
      -> std::unique_ptr<Session> {
    WireOptions options;
    options.call_timeout = call_timeout;
    options.deadline = deadline;
    return WireSession::Open(argv, path, preamble, options);
  };
  return candidate;
}

Candidate ResolveCandidate(const std::string& spec, const ReferenceGame& game,
                           const AdapterOptions& adapter) {
  if (spec.rfind(kBuiltinPrefix, 0) == 0) {
    return BuiltinCandidate(spec.substr(std::string(kBuiltinPrefix).size()),
                            game);
  }
  if (spec.empty()) throw std::invalid_argument("empty candidate");
  return AdapterCandidate(spec, adapter);
}

}  // namespace cwm
