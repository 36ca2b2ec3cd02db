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

#include "cwm/tier_static.h"

#include <functional>
#include <string>

#include "cwm/errors.h"

namespace cwm {
namespace {

void FailRemaining(TierReport& report) {
  for (std::size_t i = report.checks.size(); i < kStaticChecks.size(); ++i) {
    report.Add(std::string(kStaticChecks[i]), false);
  }
}

// Runs one shape probe; a candidate fault fails the check.
void Probe(TierReport& report, const char* name,
           const std::function<Value()>& call,
           const std::function<bool(const Value&)>& accept) {
  try {
    const Value result = call();
    const bool ok = accept(result);
    if (!ok) {
      report.Note(std::string(name) + ": got " +
                  std::string(ValueKindName(result)) + " " + result.dump());
    }
    report.Add(name, ok);
  } catch (const CandidateError& e) {
    report.Note(std::string(name) + ": " + e.what());
    report.Add(name, false);
  }
}

}  // namespace

TierReport RunStatic(Session& session) {
  TierReport report;
  report.tier = Tier::kStatic;

  SessionInfo info;
  try {
    info = session.Info();
  } catch (const CandidateError& e) {
    report.Note(std::string("info: ") + e.what());
  }
  report.Add("syntax_ok", info.load_ok);
  if (!info.load_ok) {
    if (info.load_error) report.Note("load: " + *info.load_error);
    FailRemaining(report);
    return report;
  }

  const bool api_complete = info.CoreApiComplete();
  report.Add("api_complete", api_complete);
  for (auto function : kApiFunctions) {
    if (!info.Has(function)) {
      report.Note("missing function: " + std::string(function));
    }
  }
  if (!api_complete) {
    FailRemaining(report);
    return report;
  }

  InitialResult initial;
  try {
    initial = session.InitialState();
  } catch (const CandidateError& e) {
    report.Note(std::string("initial_state: ") + e.what());
    FailRemaining(report);
    return report;
  }
  report.Add("initial_is_map", initial.state_type == "map");
  if (initial.state_type == "null") {
    report.Note("initial_state returned None");
    FailRemaining(report);
    return report;
  }
  if (initial.state_type != "map") {
    report.Note("initial_state returned a " + initial.state_type);
  }

  const StateHandle state = initial.state;
  Probe(report, "legal_actions_is_string_list",
        [&] { return session.LegalActions(state); }, IsStringList);
  Probe(report, "rewards_is_number_list",
        [&] { return session.Rewards(state); }, IsNumberList);
  Probe(report, "observations_is_list",
        [&] { return session.Observations(state); },
        [](const Value& v) { return v.is_array(); });
  Probe(report, "current_player_is_int",
        [&] { return session.CurrentPlayer(state); }, IsInteger);
  return report;
}

bool StaticGate(const TierReport& report) {
  return report.Passed("syntax_ok").value_or(false) &&
         report.Passed("api_complete").value_or(false) &&
         report.Passed("initial_is_map").value_or(false);
}

}  // namespace cwm
