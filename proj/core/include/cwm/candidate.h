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

#ifndef CWM_CANDIDATE_H_
#define CWM_CANDIDATE_H_

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cwm/deadline.h"
#include "cwm/registry.h"
#include "cwm/session.h"

namespace cwm {

inline constexpr char kBuiltinPrefix[] = "builtin:";
inline constexpr char kDefaultAdapter[] = "cwm-adapter --stdio";

// Something that can open sessions on one candidate program: an in-process
// builtin (reference game or mutant) or a candidate file hosted by an
// adapter subprocess. Every session opened under one Deadline shares it.
struct Candidate {
  std::string descriptor;
  bool in_process = false;
  std::function<std::unique_ptr<Session>(const Deadline&)> open;

  SessionFactory Factory(const Deadline& deadline) const;
};

struct AdapterOptions {
  // argv of the adapter; empty means $CWM_ADAPTER or kDefaultAdapter.
  std::vector<std::string> command;
  std::string preamble;
  std::chrono::milliseconds call_timeout{5000};
};

// argv from a whitespace-separated command string (no quoting rules).
std::vector<std::string> SplitCommand(const std::string& command);
std::vector<std::string> DefaultAdapterCommand();

// `spec` is either "builtin:NAME" or a candidate file path. Throws
// std::invalid_argument for unknown builtin names.
Candidate ResolveCandidate(const std::string& spec, const ReferenceGame& game,
                           const AdapterOptions& adapter = {});

Candidate BuiltinCandidate(const std::string& name, const ReferenceGame& game);
Candidate AdapterCandidate(const std::string& path,
                           const AdapterOptions& adapter);

}  // namespace cwm

#endif  // CWM_CANDIDATE_H_
