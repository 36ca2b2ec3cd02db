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

#include "cwm/errors.h"

#include <array>
#include <utility>

namespace cwm {
namespace {

constexpr std::array<std::pair<ErrorKind, std::string_view>, 7> kNames{{
    {ErrorKind::kLoadError, "load_error"},
    {ErrorKind::kCrash, "crash"},
    {ErrorKind::kProtocolError, "protocol_error"},
    {ErrorKind::kTimeout, "timeout"},
    {ErrorKind::kUnsupported, "unsupported"},
    {ErrorKind::kSessionDead, "session_dead"},
    {ErrorKind::kShape, "shape"},
}};

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "protocol_error";
}

ErrorKind ErrorKindFromName(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return ErrorKind::kProtocolError;
}

}  // namespace cwm
