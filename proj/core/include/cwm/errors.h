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

#ifndef CWM_ERRORS_H_
#define CWM_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cwm {

// Fault categories a candidate session can report. These are data for the
// verifier (they fail checks), never harness failures.
enum class ErrorKind {
  kLoadError,
  kCrash,
  kProtocolError,
  kTimeout,
  kUnsupported,
  kSessionDead,
  kShape,
};

std::string_view ErrorKindName(ErrorKind kind);
// Inverse of ErrorKindName; unknown names map to kProtocolError.
ErrorKind ErrorKindFromName(std::string_view name);

class CandidateError : public std::runtime_error {
 public:
  CandidateError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// A candidate exceeded its time budget. Deliberately not a CandidateError:
// tiers let it propagate so the reward pipeline can zero the reward.
class TimeoutError : public std::runtime_error {
 public:
  explicit TimeoutError(const std::string& message)
      : std::runtime_error(message) {}
};

// Faults of the harness itself (bad configuration, missing adapter binary,
// I/O failures). Surface as exit code 3 in the CLI.
class HarnessError : public std::runtime_error {
 public:
  explicit HarnessError(const std::string& message)
      : std::runtime_error(message) {}
};

class SpawnError : public HarnessError {
 public:
  explicit SpawnError(const std::string& message) : HarnessError(message) {}
};

class CanonicalizationError : public std::runtime_error {
 public:
  explicit CanonicalizationError(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace cwm

#endif  // CWM_ERRORS_H_
