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

#ifndef CWM_MUTANTS_H_
#define CWM_MUTANTS_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cwm/program.h"

namespace cwm {

// Crafted faulty candidates. Each decorates a reference program and breaks
// exactly one aspect of the contract.
enum class MutantKind {
  kMutatesInput,      // apply_action writes the successor into its input
  kCrashesOnKey,      // raises a KeyError from the fourth move on
  kNondeterministic,  // successors of non-chance moves carry a fresh nonce
  kTerminalActions,   // terminal states report a non-empty action list
  kDeadEnd,           // reports no actions at a non-terminal state (depth 2)
  kHangs,             // apply_action never returns
  kScalarRewards,     // rewards returns a bare number
  kStubResampler,     // resample_history returns []
  kEchoResampler,     // resample_history echoes the recorded actions
  kNoResampler,       // resample_history absent
  kMissingApi,        // observations function absent
  kSyntaxError,       // fails to load
};

struct MutantName {
  MutantKind kind;
  std::string_view name;
};

// Registered names, e.g. "mutant_mutating".
const std::vector<MutantName>& MutantNames();
std::optional<MutantKind> MutantKindFromName(std::string_view name);

// Source text reported for the stub and echo resamplers.
extern const std::string_view kStubResamplerSource;
extern const std::string_view kEchoResamplerSource;

std::shared_ptr<GameProgram> MakeMutant(MutantKind kind,
                                        std::shared_ptr<GameProgram> base);

}  // namespace cwm

#endif  // CWM_MUTANTS_H_
