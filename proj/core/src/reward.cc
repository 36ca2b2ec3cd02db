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

#include "cwm/reward.h"

#include <chrono>
#include <memory>
#include <stdexcept>

#include "cwm/errors.h"
#include "cwm/isolation.h"
#include "cwm/tier_dynamics.h"
#include "cwm/tier_information.h"
#include "cwm/tier_static.h"

namespace cwm {
namespace {

using Millis = std::chrono::milliseconds;

Millis ToMillis(double seconds) {
  return Millis(static_cast<std::int64_t>(seconds * 1000.0));
}

Rational ParseRational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(text));
  return Rational(std::stoll(text.substr(0, slash)),
                  std::stoll(text.substr(slash + 1)));
}

Value ScoresValue(const std::map<Tier, Rational>& scores, bool exact) {
  Value out = Value::object();
  for (const auto& [tier, score] : scores) {
    const std::string key(TierName(tier));
    if (exact) {
      out[key] = score.ToString();
    } else {
      out[key] = score.ToDouble();
    }
  }
  return out;
}

std::map<Tier, Rational> ScoresFromValue(const Value& exact) {
  std::map<Tier, Rational> out;
  for (const auto& [key, text] : exact.items()) {
    auto tier = TierFromName(key);
    if (!tier) throw std::invalid_argument("unknown tier '" + key + "'");
    out[*tier] = ParseRational(text.get<std::string>());
  }
  return out;
}

RewardBreakdown TimedOut(const GameSpec& spec, const std::string& message) {
  RewardBreakdown out;
  out.weights_used = EffectiveWeights(spec);
  out.timed_out = true;
  out.diagnostics.push_back(message);
  return out;
}

// The gated pipeline; TimeoutError propagates.
RewardBreakdown RewardPipeline(const Candidate& candidate, const GameSpec& spec,
                               const ScenarioFile& scenarios,
                               const RewardConfig& config,
                               const Deadline& deadline) {
  const SessionFactory factory = candidate.Factory(deadline);
  TierScores scores;
  std::optional<std::string> resample_source;
  std::vector<std::string> diagnostics;
  {
    std::unique_ptr<Session> session = factory();
    SessionInfo info;
    try {
      info = session->Info();
    } catch (const CandidateError& e) {
      info.load_error = e.what();
    }
    if (!info.load_ok) {
      RewardBreakdown out;
      out.weights_used = EffectiveWeights(spec);
      out.load_error = info.load_error.value_or("candidate did not load");
      session->Close();
      return out;
    }
    resample_source = info.resample_source;
    const TierReport report = RunStatic(*session);
    session->Close();
    scores.static_score = report.exact_score();
    scores.static_continue = StaticGate(report);
    diagnostics.insert(diagnostics.end(), report.diagnostics.begin(),
                       report.diagnostics.end());
  }
  auto finish = [&] {
    RewardBreakdown out = CombineReward(spec, scores);
    out.diagnostics.insert(out.diagnostics.end(), diagnostics.begin(),
                           diagnostics.end());
    return out;
  };
  if (!scores.static_continue) return finish();

  FuzzConfig fuzz;
  fuzz.n_trajectories = config.n;
  fuzz.rng_seed = config.seed;
  const TierReport dynamics = RunDynamics(factory, fuzz, spec);
  scores.dynamics = dynamics.exact_score();
  diagnostics.insert(diagnostics.end(), dynamics.diagnostics.begin(),
                     dynamics.diagnostics.end());
  if (*scores.dynamics < kDynamicsGate) return finish();

  const TierReport scenario_report = RunScenarios(factory, scenarios, spec);
  scores.scenarios = scenario_report.exact_score();
  diagnostics.insert(diagnostics.end(), scenario_report.diagnostics.begin(),
                     scenario_report.diagnostics.end());

  if (spec.imperfect()) {
    const StubVerdict verdict = DetectStub(resample_source);
    if (verdict.diagnostic) diagnostics.push_back(*verdict.diagnostic);
    scores.stub = verdict.stub;
    if (!verdict.stub) {
      ProbeConfig probe;
      probe.n_probes = config.n;
      probe.rng_seed = config.seed;
      const TierReport information = RunInformation(factory, probe, spec);
      scores.information = information.exact_score();
      diagnostics.insert(diagnostics.end(), information.diagnostics.begin(),
                         information.diagnostics.end());
    }
  }
  return finish();
}

}  // namespace

std::map<Tier, Rational> EffectiveWeights(const GameSpec& spec) {
  std::map<Tier, Rational> weights = {
      {Tier::kStatic, Rational(3, 20)},
      {Tier::kDynamics, Rational(5, 20)},
      {Tier::kScenarios, Rational(6, 20)},
      {Tier::kInformation, Rational(6, 20)},
  };
  if (spec.imperfect()) return weights;
  const Rational kept = Rational(1) - weights[Tier::kInformation];
  weights.erase(Tier::kInformation);
  for (auto& [tier, weight] : weights) weight = weight / kept;
  return weights;
}

RewardBreakdown CombineReward(const GameSpec& spec, const TierScores& scores) {
  RewardBreakdown out;
  out.weights_used = EffectiveWeights(spec);
  out.stub = scores.stub;
  out.gates.static_continue = scores.static_continue;
  if (!scores.static_score) return out;

  const auto& w = out.weights_used;
  out.tier_scores[Tier::kStatic] = *scores.static_score;
  out.exact_reward = *scores.static_score * w.at(Tier::kStatic);
  if (!scores.static_continue || !scores.dynamics) return out;

  out.tier_scores[Tier::kDynamics] = *scores.dynamics;
  out.exact_reward += *scores.dynamics * w.at(Tier::kDynamics);
  out.gates.dynamics_gate = *scores.dynamics >= kDynamicsGate;
  if (!out.gates.dynamics_gate) return out;

  if (scores.scenarios) {
    out.tier_scores[Tier::kScenarios] = *scores.scenarios;
    out.exact_reward += *scores.scenarios * w.at(Tier::kScenarios);
  }
  if (spec.imperfect() && !scores.stub && scores.information) {
    out.tier_scores[Tier::kInformation] = *scores.information;
    out.exact_reward += *scores.information * w.at(Tier::kInformation);
  }
  return out;
}

Value RewardBreakdown::ToValue() const {
  return {
      {"tier_scores", ScoresValue(tier_scores, false)},
      {"weights_used", ScoresValue(weights_used, false)},
      {"gates",
       {{"static_continue", gates.static_continue},
        {"dynamics_gate", gates.dynamics_gate}}},
      {"stub", stub},
      {"timed_out", timed_out},
      {"load_error", load_error ? Value(*load_error) : Value(nullptr)},
      {"reward", reward()},
      {"exact",
       {{"tier_scores", ScoresValue(tier_scores, true)},
        {"weights_used", ScoresValue(weights_used, true)},
        {"reward", exact_reward.ToString()}}},
      {"diagnostics", diagnostics},
  };
}

RewardBreakdown RewardBreakdown::FromValue(const Value& value) {
  RewardBreakdown out;
  const Value& exact = value.at("exact");
  out.tier_scores = ScoresFromValue(exact.at("tier_scores"));
  out.weights_used = ScoresFromValue(exact.at("weights_used"));
  out.exact_reward = ParseRational(exact.at("reward").get<std::string>());
  out.gates.static_continue = value.at("gates").at("static_continue");
  out.gates.dynamics_gate = value.at("gates").at("dynamics_gate");
  out.stub = value.at("stub");
  out.timed_out = value.at("timed_out");
  if (value.at("load_error").is_string()) {
    out.load_error = value["load_error"].get<std::string>();
  }
  out.diagnostics = value.at("diagnostics").get<std::vector<std::string>>();
  return out;
}

RewardBreakdown ComputeReward(const Candidate& candidate, const GameSpec& spec,
                              const ScenarioFile& scenarios,
                              const RewardConfig& config) {
  const Millis budget = ToMillis(config.timeout_seconds);
  const std::string expired =
      "evaluation exceeded " + std::to_string(budget.count()) + " ms";
  if (candidate.in_process) {
    auto result = RunForked(
        [&] {
          try {
            return RewardPipeline(candidate, spec, scenarios, config,
                                  Deadline::Never())
                .ToValue();
          } catch (const TimeoutError& e) {
            return TimedOut(spec, e.what()).ToValue();
          }
        },
        budget);
    if (!result) return TimedOut(spec, expired);
    return RewardBreakdown::FromValue(*result);
  }
  try {
    return RewardPipeline(candidate, spec, scenarios, config,
                          Deadline::After(budget));
  } catch (const TimeoutError& e) {
    return TimedOut(spec, e.what());
  }
}

RewardBreakdown GatedReward(const Evaluation& evaluation,
                            const GameSpec& spec) {
  TierScores scores;
  if (const TierReport* r = evaluation.Find(Tier::kStatic)) {
    if (!r->Passed("syntax_ok").value_or(false)) {
      RewardBreakdown out;
      out.weights_used = EffectiveWeights(spec);
      out.load_error = "candidate did not load";
      for (const std::string& note : r->diagnostics) {
        if (note.rfind("load: ", 0) == 0) out.load_error = note.substr(6);
      }
      return out;
    }
    scores.static_score = r->exact_score();
    scores.static_continue = StaticGate(*r);
  }
  if (const TierReport* r = evaluation.Find(Tier::kDynamics)) {
    scores.dynamics = r->exact_score();
  }
  if (const TierReport* r = evaluation.Find(Tier::kScenarios)) {
    scores.scenarios = r->exact_score();
  }
  if (const TierReport* r = evaluation.Find(Tier::kInformation)) {
    scores.information = r->exact_score();
  }
  scores.stub = evaluation.stub;
  return CombineReward(spec, scores);
}

const TierReport* Evaluation::Find(Tier tier) const {
  for (const auto& report : tiers) {
    if (report.tier == tier) return &report;
  }
  return nullptr;
}

TierReport FailedTierReport(Tier tier, const ScenarioFile& scenarios,
                            const std::string& reason) {
  TierReport report;
  report.tier = tier;
  switch (tier) {
    case Tier::kStatic:
      for (auto name : kStaticChecks) report.Add(std::string(name), false);
      break;
    case Tier::kDynamics:
      for (auto name : kDynamicsChecks) report.Add(std::string(name), false);
      break;
    case Tier::kScenarios:
      for (const auto& s : scenarios.scenarios) report.Add(s.name, false);
      break;
    case Tier::kInformation:
      for (auto name : kInformationChecks) report.Add(std::string(name), false);
      break;
  }
  report.Note(reason);
  return report;
}

namespace {

// Runs one tier under its own budget: forked for in-process candidates, by
// deadline for adapter candidates.
TierReport RunTierBounded(
    const Candidate& candidate, Tier tier, const ScenarioFile& scenarios,
    double timeout_seconds,
    const std::function<TierReport(const SessionFactory&)>& run) {
  const Millis budget = ToMillis(timeout_seconds);
  const std::string expired = std::string(TierName(tier)) +
                              " tier exceeded " +
                              std::to_string(budget.count()) + " ms";
  if (candidate.in_process) {
    auto result = RunForked(
        [&] {
          try {
            return run(candidate.Factory(Deadline::Never())).ToValue();
          } catch (const TimeoutError& e) {
            return FailedTierReport(tier, scenarios, e.what()).ToValue();
          }
        },
        budget);
    if (!result) return FailedTierReport(tier, scenarios, expired);
    return TierReport::FromValue(*result);
  }
  try {
    return run(candidate.Factory(Deadline::After(budget)));
  } catch (const TimeoutError& e) {
    return FailedTierReport(tier, scenarios, e.what());
  }
}

}  // namespace

Evaluation Evaluate(const Candidate& candidate, const GameSpec& spec,
                    const ScenarioFile& scenarios,
                    const EvaluateConfig& config) {
  Evaluation out;
  auto timed = [&](Tier tier, const std::function<TierReport()>& run) {
    const auto start = std::chrono::steady_clock::now();
    out.tiers.push_back(run());
    out.timings_ms[tier] = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  };
  auto bounded = [&](Tier tier,
                     const std::function<TierReport(const SessionFactory&)>& run) {
    timed(tier, [&] {
      return RunTierBounded(candidate, tier, scenarios,
                            config.tier_timeout_seconds, run);
    });
  };

  bounded(Tier::kStatic, [](const SessionFactory& factory) {
    std::unique_ptr<Session> session = factory();
    TierReport report = RunStatic(*session);
    session->Close();
    return report;
  });
  const TierReport& static_report = out.tiers.front();
  const bool executable = static_report.Passed("syntax_ok").value_or(false) &&
                          static_report.Passed("api_complete").value_or(false);

  if (spec.imperfect() && executable) {
    try {
      std::unique_ptr<Session> session = candidate.open(Deadline::After(
          ToMillis(config.tier_timeout_seconds)));
      out.stub = DetectStub(session->Info().resample_source).stub;
      session->Close();
    } catch (const CandidateError&) {
    } catch (const TimeoutError&) {
    }
  }

  std::vector<Tier> rest = {Tier::kDynamics, Tier::kScenarios};
  if (spec.imperfect()) rest.push_back(Tier::kInformation);
  for (Tier tier : rest) {
    if (!executable) {
      timed(tier, [&] {
        return FailedTierReport(tier, scenarios,
                                "candidate did not load or lacks core API");
      });
      continue;
    }
    bounded(tier, [&](const SessionFactory& factory) {
      switch (tier) {
        case Tier::kDynamics: {
          FuzzConfig fuzz;
          fuzz.n_trajectories = config.fuzz_n;
          fuzz.rng_seed = config.seed;
          return RunDynamics(factory, fuzz, spec);
        }
        case Tier::kScenarios:
          return RunScenarios(factory, scenarios, spec);
        default: {
          ProbeConfig probe;
          probe.n_probes = config.info_n;
          probe.rng_seed = config.seed;
          return RunInformation(factory, probe, spec);
        }
      }
    });
  }

  Rational total;
  for (const auto& report : out.tiers) total += report.exact_score();
  out.exact_mean = total / Rational(static_cast<std::int64_t>(out.tiers.size()));
  return out;
}

}  // namespace cwm
