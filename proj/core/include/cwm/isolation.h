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

#ifndef CWM_ISOLATION_H_
#define CWM_ISOLATION_H_

#include <chrono>
#include <functional>
#include <optional>

#include "cwm/value.h"

namespace cwm {

// Runs `task` in a forked child and returns its result, or nullopt when the
// child is still running after `budget` (it is then killed). An exception
// escaping `task` is rethrown in the parent as HarnessError.
//
// Used to bound in-process candidates, whose infinite loops cannot be
// interrupted from the calling thread. Call only from single-threaded
// contexts.
std::optional<Value> RunForked(const std::function<Value()>& task,
                               std::chrono::milliseconds budget);

}  // namespace cwm

#endif  // CWM_ISOLATION_H_
