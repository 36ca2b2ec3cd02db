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

#ifndef CWM_REPORT_H_
#define CWM_REPORT_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cwm/rational.h"
#include "cwm/reward.h"
#include "cwm/tier_report.h"
#include "cwm/value.h"

namespace cwm {

inline constexpr int kReportFormatVersion = 1;

std::string_view HarnessVersion();

// Machine-readable result of `cwm verify` and `cwm reward`
// (docs/report.schema.json).
struct VerificationReport {
  int format_version = kReportFormatVersion;
  std::string harness_version{HarnessVersion()};
  std::string command;
  std::string game;
  std::map<std::string, int> game_params;
  std::string candidate;
  // Seeds and sizes echoed verbatim.
  Value config = Value::object();
  std::vector<TierReport> tiers;
  std::optional<Rational> evaluate_mean;
  RewardBreakdown reward;
  // The only nondeterministic field.
  std::map<std::string, double> timings_ms;

  Value ToValue() const;
  static VerificationReport FromValue(const Value& value);
  // Pretty-printed JSON with a trailing newline.
  std::string ToJson() const;

  friend bool operator==(const VerificationReport&,
                         const VerificationReport&) = default;
};

}  // namespace cwm

#endif  // CWM_REPORT_H_
