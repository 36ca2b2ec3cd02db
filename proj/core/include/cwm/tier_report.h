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

#ifndef CWM_TIER_REPORT_H_
#define CWM_TIER_REPORT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cwm/rational.h"
#include "cwm/value.h"

namespace cwm {

enum class Tier { kStatic, kDynamics, kScenarios, kInformation };

inline constexpr Tier kAllTiers[] = {Tier::kStatic, Tier::kDynamics,
                                     Tier::kScenarios, Tier::kInformation};

std::string_view TierName(Tier tier);
std::optional<Tier> TierFromName(std::string_view name);

struct Check {
  std::string name;
  bool passed = false;

  friend bool operator==(const Check&, const Check&) = default;
};

struct TierReport {
  Tier tier = Tier::kStatic;
  std::vector<Check> checks;
  std::vector<std::string> diagnostics;

  void Add(std::string name, bool passed) {
    checks.push_back({std::move(name), passed});
  }
  void Note(std::string message) { diagnostics.push_back(std::move(message)); }

  int passed_count() const;
  int total_count() const { return static_cast<int>(checks.size()); }
  // passed / total; 0 for an empty check list.
  Rational exact_score() const;
  double score() const { return exact_score().ToDouble(); }
  // nullopt when no check has that name.
  std::optional<bool> Passed(std::string_view name) const;
  std::vector<bool> Vector() const;

  Value ToValue() const;
  static TierReport FromValue(const Value& value);

  friend bool operator==(const TierReport&, const TierReport&) = default;
};

}  // namespace cwm

#endif  // CWM_TIER_REPORT_H_
