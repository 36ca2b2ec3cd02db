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

#include "cwm/report.h"

#include <stdexcept>

#ifndef CWM_VERSION
#define CWM_VERSION "0.0.0"
#endif

namespace cwm {
namespace {

Rational ParseRational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(text));
  return Rational(std::stoll(text.substr(0, slash)),
                  std::stoll(text.substr(slash + 1)));
}

}  // namespace

std::string_view HarnessVersion() { return CWM_VERSION; }

Value VerificationReport::ToValue() const {
  Value tier_values = Value::array();
  for (const auto& tier : tiers) tier_values.push_back(tier.ToValue());
  Value mean = nullptr;
  if (evaluate_mean) {
    mean = {{"value", evaluate_mean->ToDouble()},
            {"exact", evaluate_mean->ToString()}};
  }
  return {{"format_version", format_version},
          {"harness_version", harness_version},
          {"command", command},
          {"game", game},
          {"game_params", game_params},
          {"candidate", candidate},
          {"config", config},
          {"tiers", std::move(tier_values)},
          {"evaluate_mean", std::move(mean)},
          {"reward", reward.ToValue()},
          {"timings_ms", timings_ms}};
}

VerificationReport VerificationReport::FromValue(const Value& value) {
  VerificationReport report;
  report.format_version = value.at("format_version").get<int>();
  if (report.format_version != kReportFormatVersion) {
    throw std::invalid_argument("unsupported report format_version " +
                                std::to_string(report.format_version));
  }
  report.harness_version = value.at("harness_version").get<std::string>();
  report.command = value.at("command").get<std::string>();
  report.game = value.at("game").get<std::string>();
  report.game_params =
      value.at("game_params").get<std::map<std::string, int>>();
  report.candidate = value.at("candidate").get<std::string>();
  report.config = value.at("config");
  for (const auto& tier : value.at("tiers")) {
    report.tiers.push_back(TierReport::FromValue(tier));
  }
  if (const Value& mean = value.at("evaluate_mean"); !mean.is_null()) {
    report.evaluate_mean = ParseRational(mean.at("exact").get<std::string>());
  }
  report.reward = RewardBreakdown::FromValue(value.at("reward"));
  report.timings_ms =
      value.at("timings_ms").get<std::map<std::string, double>>();
  return report;
}

std::string VerificationReport::ToJson() const {
  return ToValue().dump(2, ' ', false,
                        nlohmann::json::error_handler_t::replace) +
         "\n";
}

}  // namespace cwm
