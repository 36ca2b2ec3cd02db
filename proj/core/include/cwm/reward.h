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

#ifndef CWM_REWARD_H_
#define CWM_REWARD_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cwm/candidate.h"
#include "cwm/game_spec.h"
#include "cwm/rational.h"
#include "cwm/tier_report.h"
#include "cwm/tier_scenarios.h"
#include "cwm/value.h"

namespace cwm {

// Imperfect information: static 3/20, dynamics 1/4, scenarios 3/10,
// information 3/10. Perfect information drops information and divides the
// rest by 7/10.
std::map<Tier, Rational> EffectiveWeights(const GameSpec& spec);

// Threshold on the dynamics score before scenarios and information count.
inline const Rational kDynamicsGate{1, 2};

struct GateDecisions {
  bool static_continue = false;
  bool dynamics_gate = false;

  friend bool operator==(const GateDecisions&, const GateDecisions&) = default;
};

struct RewardBreakdown {
  // Tiers that ran; absent otherwise.
  std::map<Tier, Rational> tier_scores;
  std::map<Tier, Rational> weights_used;
  GateDecisions gates;
  bool stub = false;
  bool timed_out = false;
  std::optional<std::string> load_error;
  Rational exact_reward;
  std::vector<std::string> diagnostics;

  double reward() const { return exact_reward.ToDouble(); }

  Value ToValue() const;
  static RewardBreakdown FromValue(const Value& value);

  friend bool operator==(const RewardBreakdown&,
                         const RewardBreakdown&) = default;
};

// Scores available to the gated combination; tiers not run are nullopt.
struct TierScores {
  std::optional<Rational> static_score;
  bool static_continue = false;
  std::optional<Rational> dynamics;
  std::optional<Rational> scenarios;
  std::optional<Rational> information;
  bool stub = false;
};

// Pure gating arithmetic:
//   static only when !static_continue; static + dynamics when
//   dynamics < 1/2; then + scenarios; then, for imperfect games, + information
//   unless the resampler is a stub (its weight is forfeited, not
//   redistributed).
RewardBreakdown CombineReward(const GameSpec& spec, const TierScores& scores);

struct RewardConfig {
  int n = 20;
  double timeout_seconds = 60;
  std::uint64_t seed = 42;
};

// Gated reward pipeline bounded by `timeout_seconds` of wall clock; any
// candidate timeout yields reward 0 with timed_out set. Throws HarnessError
// for harness faults (adapter missing, fork failure).
RewardBreakdown ComputeReward(const Candidate& candidate, const GameSpec& spec,
                              const ScenarioFile& scenarios,
                              const RewardConfig& config = {});

struct EvaluateConfig {
  int fuzz_n = 100;
  int info_n = 100;
  std::uint64_t seed = 42;
  // Budget per tier; a tier that exceeds it reports every check failed.
  double tier_timeout_seconds = 60;
};

struct Evaluation {
  std::vector<TierReport> tiers;
  std::map<Tier, double> timings_ms;
  Rational exact_mean;
  // Syntactic stub verdict on the resampler (imperfect games only).
  bool stub = false;

  double mean() const { return exact_mean.ToDouble(); }
  const TierReport* Find(Tier tier) const;
};

// Runs every applicable tier without gating and averages their scores.
// A candidate that did not load or lacks core API functions gets every
// non-static check failed.
Evaluation Evaluate(const Candidate& candidate, const GameSpec& spec,
                    const ScenarioFile& scenarios,
                    const EvaluateConfig& config = {});

// The gated combination applied to an evaluation's tier scores (no new
// candidate calls).
RewardBreakdown GatedReward(const Evaluation& evaluation, const GameSpec& spec);

// A report for `tier` with every check failed and `reason` as diagnostic.
TierReport FailedTierReport(Tier tier, const ScenarioFile& scenarios,
                            const std::string& reason);

}  // namespace cwm

#endif  // CWM_REWARD_H_
