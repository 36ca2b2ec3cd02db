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

#include "cwm/tier_report.h"

#include <stdexcept>

namespace cwm {

std::string_view TierName(Tier tier) {
  switch (tier) {
    case Tier::kStatic:
      return "static";
    case Tier::kDynamics:
      return "dynamics";
    case Tier::kScenarios:
      return "scenarios";
    case Tier::kInformation:
      return "information";
  }
  return "static";
}

std::optional<Tier> TierFromName(std::string_view name) {
  for (Tier tier : kAllTiers) {
    if (TierName(tier) == name) return tier;
  }
  return std::nullopt;
}

int TierReport::passed_count() const {
  int passed = 0;
  for (const auto& check : checks) passed += check.passed ? 1 : 0;
  return passed;
}

Rational TierReport::exact_score() const {
  if (checks.empty()) return Rational(0);
  return Rational(passed_count(), total_count());
}

std::optional<bool> TierReport::Passed(std::string_view name) const {
  for (const auto& check : checks) {
    if (check.name == name) return check.passed;
  }
  return std::nullopt;
}

std::vector<bool> TierReport::Vector() const {
  std::vector<bool> out;
  out.reserve(checks.size());
  for (const auto& check : checks) out.push_back(check.passed);
  return out;
}

Value TierReport::ToValue() const {
  Value checks_value = Value::array();
  for (const auto& check : checks) {
    checks_value.push_back({{"name", check.name}, {"passed", check.passed}});
  }
  return {{"tier", std::string(TierName(tier))},
          {"checks", std::move(checks_value)},
          {"passed", passed_count()},
          {"total", total_count()},
          {"score", score()},
          {"diagnostics", diagnostics}};
}

TierReport TierReport::FromValue(const Value& value) {
  TierReport report;
  auto tier = TierFromName(value.at("tier").get<std::string>());
  if (!tier) throw std::invalid_argument("unknown tier in report");
  report.tier = *tier;
  for (const auto& check : value.at("checks")) {
    report.Add(check.at("name").get<std::string>(),
               check.at("passed").get<bool>());
  }
  report.diagnostics = value.at("diagnostics").get<std::vector<std::string>>();
  return report;
}

}  // namespace cwm
