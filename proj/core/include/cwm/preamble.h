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

#ifndef CWM_PREAMBLE_H_
#define CWM_PREAMBLE_H_

#include <string_view>

namespace cwm {

// Import header injected ahead of candidate source by the adapter (the
// shipped data/preamble_v1.py).
extern const std::string_view kPreambleV1;

}  // namespace cwm

#endif  // CWM_PREAMBLE_H_
