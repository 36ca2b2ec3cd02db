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

#ifndef CWM_TOOLS_CLI_H_
#define CWM_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace cwm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitHarness = 3;

// Entry point of the `cwm` tool. `args` excludes the program name. `in` is
// only read by `serve`.
int Run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

// Formats a reward in [0,1] as a plain decimal with at least one fractional
// digit ("1.0", "0.25").
std::string FormatReward(double reward);

}  // namespace cwm::cli

#endif  // CWM_TOOLS_CLI_H_
