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

#include <gtest/gtest.h>

#include <chrono>
#include <random>
#include <string>

#include "cwm/rational.h"
#include "cwm/registry.h"
#include "test_util.h"

namespace cwm {
namespace {

GameSpec Perfect() { return MakeGame("tic_tac_toe").spec; }
GameSpec Imperfect() { return MakeGame("kuhn_poker").spec; }

TierScores AllOnes() {
  TierScores s;
  s.static_score = Rational(1);
  s.static_continue = true;
  s.dynamics = Rational(1);
  s.scenarios = Rational(1);
  s.information = Rational(1);
  return s;
}

TEST(RationalTest, Arithmetic) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1, -2), Rational(-1, 2));
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(3, 20) * Rational(2, 5), Rational(3, 50));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational(7, 10).ToString(), "7/10");
  EXPECT_EQ(Rational(4, 2).ToString(), "2");
  EXPECT_EQ(Rational(1, 4).ToDouble(), 0.25);
  EXPECT_THROW(Rational(1, 0), std::invalid_argument);
}

TEST(WeightsTest, ImperfectWeights) {
  const auto w = EffectiveWeights(Imperfect());
  EXPECT_EQ(w.at(Tier::kStatic), Rational(3, 20));
  EXPECT_EQ(w.at(Tier::kDynamics), Rational(5, 20));
  EXPECT_EQ(w.at(Tier::kScenarios), Rational(6, 20));
  EXPECT_EQ(w.at(Tier::kInformation), Rational(6, 20));
}

TEST(WeightsTest, PerfectWeightsRenormalize) {
  const auto w = EffectiveWeights(Perfect());
  EXPECT_EQ(w.at(Tier::kStatic), Rational(3, 14));
  EXPECT_EQ(w.at(Tier::kDynamics), Rational(5, 14));
  EXPECT_EQ(w.at(Tier::kScenarios), Rational(3, 7));
  EXPECT_EQ(w.count(Tier::kInformation), 0u);
  Rational total;
  for (const auto& [tier, weight] : w) total += weight;
  EXPECT_EQ(total, Rational(1));
}

TEST(CombineRewardTest, FailedDynamicsGate) {
  TierScores s = AllOnes();
  s.dynamics = Rational(2, 5);
  const RewardBreakdown r = CombineReward(Imperfect(), s);
  EXPECT_EQ(r.exact_reward, Rational(1, 4));
  EXPECT_EQ(r.reward(), 0.25);
  EXPECT_FALSE(r.gates.dynamics_gate);
  EXPECT_EQ(r.tier_scores.count(Tier::kScenarios), 0u);
}

TEST(CombineRewardTest, PerfectGameAllOnes) {
  const RewardBreakdown r = CombineReward(Perfect(), AllOnes());
  EXPECT_EQ(r.reward(), 1.0);
  EXPECT_EQ(r.tier_scores.count(Tier::kInformation), 0u);
}

TEST(CombineRewardTest, StubForfeitsInformation) {
  TierScores s = AllOnes();
  s.stub = true;
  const RewardBreakdown r = CombineReward(Imperfect(), s);
  EXPECT_EQ(r.reward(), 0.7);
  EXPECT_TRUE(r.stub);
}

TEST(CombineRewardTest, GateIsInclusive) {
  TierScores s = AllOnes();
  s.dynamics = Rational(1, 2);
  const RewardBreakdown r = CombineReward(Imperfect(), s);
  EXPECT_TRUE(r.gates.dynamics_gate);
  EXPECT_EQ(r.exact_reward, Rational(3, 20) + Rational(1, 8) +
                                Rational(3, 10) + Rational(3, 10));
}

TEST(CombineRewardTest, StaticStopOnlyScoresStatic) {
  TierScores s = AllOnes();
  s.static_score = Rational(1, 7);
  s.static_continue = false;
  const RewardBreakdown r = CombineReward(Imperfect(), s);
  EXPECT_EQ(r.exact_reward, Rational(3, 140));
  EXPECT_FALSE(r.gates.static_continue);
}

// Reward never decreases when one tier score rises.
TEST(CombineRewardTest, MonotoneInEveryTier) {
  std::mt19937_64 rng(1);
  auto draw = [&] { return Rational(static_cast<std::int64_t>(rng() % 8), 7); };
  for (const GameSpec& spec : {Perfect(), Imperfect()}) {
    for (int i = 0; i < 2000; ++i) {
      TierScores base;
      base.static_score = draw();
      base.static_continue = true;
      base.dynamics = draw();
      base.scenarios = draw();
      base.information = draw();
      const Rational before = CombineReward(spec, base).exact_reward;
      for (int tier = 0; tier < 4; ++tier) {
        TierScores up = base;
        std::optional<Rational>* field[] = {&up.static_score, &up.dynamics,
                                            &up.scenarios, &up.information};
        **field[tier] = std::max(**field[tier], draw());
        EXPECT_GE(CombineReward(spec, up).exact_reward, before);
      }
      EXPECT_GE(before, Rational(0));
      EXPECT_LE(before, Rational(1));
    }
  }
}

TEST(RewardBreakdownTest, RoundTrips) {
  TierScores s = AllOnes();
  s.scenarios = Rational(5, 6);
  RewardBreakdown r = CombineReward(Imperfect(), s);
  r.diagnostics = {"note"};
  r.load_error = "boom";
  EXPECT_EQ(RewardBreakdown::FromValue(Value::parse(r.ToValue().dump())), r);
}

RewardBreakdown RewardOf(const std::string& candidate, const std::string& game,
                         RewardConfig config = {}) {
  const ReferenceGame g = MakeGame(game);
  return ComputeReward(BuiltinCandidate(candidate, g), g.spec,
                       testing::ShippedScenarios(game), config);
}

TEST(ComputeRewardTest, ReferencesScoreOne) {
  for (const std::string& game : RegisteredGameNames()) {
    const RewardBreakdown r = RewardOf(game, game);
    EXPECT_EQ(r.reward(), 1.0) << game << r.ToValue().dump();
    EXPECT_FALSE(r.timed_out);
  }
}

TEST(ComputeRewardTest, StubResamplerCapsReward) {
  const RewardBreakdown r = RewardOf("mutant_stub_resampler", "leduc_poker");
  EXPECT_TRUE(r.stub);
  EXPECT_EQ(r.reward(), 0.7);
}

TEST(ComputeRewardTest, LoadFailureScoresZero) {
  const RewardBreakdown r = RewardOf("mutant_syntax_error", "kuhn_poker");
  EXPECT_EQ(r.reward(), 0.0);
  ASSERT_TRUE(r.load_error.has_value());
  EXPECT_NE(r.load_error->find("SyntaxError"), std::string::npos);
}

TEST(ComputeRewardTest, MissingApiStopsAfterStatic) {
  const RewardBreakdown r = RewardOf("mutant_missing_api", "kuhn_poker");
  EXPECT_EQ(r.exact_reward, Rational(3, 20) * Rational(1, 7));
  EXPECT_EQ(r.tier_scores.size(), 1u);
}

TEST(ComputeRewardTest, CrashingCandidateFailsDynamicsGate) {
  const RewardBreakdown r = RewardOf("mutant_crash_key", "leduc_poker");
  EXPECT_TRUE(r.gates.static_continue);
  EXPECT_LT(r.reward(), 1.0);
}

TEST(ComputeRewardTest, HangingCandidateTimesOut) {
  RewardConfig config;
  config.timeout_seconds = 1;
  const auto start = std::chrono::steady_clock::now();
  const RewardBreakdown r = RewardOf("mutant_hanging", "tic_tac_toe", config);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_EQ(r.reward(), 0.0);
  EXPECT_TRUE(r.timed_out);
  EXPECT_LT(elapsed, std::chrono::seconds(5));
}

TEST(ComputeRewardTest, Deterministic) {
  EXPECT_EQ(RewardOf("mutant_nondeterministic", "leduc_poker"),
            RewardOf("mutant_nondeterministic", "leduc_poker"));
}

TEST(EvaluateTest, ReferenceMeanIsOne) {
  const ReferenceGame g = MakeGame("leduc_poker");
  const Evaluation e = Evaluate(BuiltinCandidate("leduc_poker", g), g.spec,
                                testing::ShippedScenarios("leduc_poker"));
  EXPECT_EQ(e.exact_mean, Rational(1));
  ASSERT_EQ(e.tiers.size(), 4u);
  EXPECT_EQ(GatedReward(e, g.spec).reward(), 1.0);
}

TEST(EvaluateTest, MutatingCandidateDynamicsScore) {
  const ReferenceGame g = MakeGame("tic_tac_toe");
  const Evaluation e =
      Evaluate(BuiltinCandidate("mutant_mutating", g), g.spec,
               testing::ShippedScenarios("tic_tac_toe"));
  ASSERT_NE(e.Find(Tier::kDynamics), nullptr);
  EXPECT_EQ(e.Find(Tier::kDynamics)->score(), 0.75);
  EXPECT_EQ(e.Find(Tier::kInformation), nullptr);
}

TEST(EvaluateTest, UnloadableCandidateFailsEveryTier) {
  const ReferenceGame g = MakeGame("kuhn_poker");
  const Evaluation e =
      Evaluate(BuiltinCandidate("mutant_syntax_error", g), g.spec,
               testing::ShippedScenarios("kuhn_poker"));
  for (const TierReport& tier : e.tiers) {
    EXPECT_EQ(tier.passed_count(), 0) << TierName(tier.tier);
    EXPECT_GT(tier.total_count(), 0) << TierName(tier.tier);
  }
  EXPECT_EQ(e.exact_mean, Rational(0));
  const RewardBreakdown gated = GatedReward(e, g.spec);
  EXPECT_EQ(gated.reward(), 0.0);
  ASSERT_TRUE(gated.load_error.has_value());
  EXPECT_NE(gated.load_error->find("SyntaxError"), std::string::npos);
}

TEST(EvaluateTest, HangingTierIsContained) {
  const ReferenceGame g = MakeGame("tic_tac_toe");
  EvaluateConfig config;
  config.tier_timeout_seconds = 1;
  const Evaluation e = Evaluate(BuiltinCandidate("mutant_hanging", g), g.spec,
                                testing::ShippedScenarios("tic_tac_toe"),
                                config);
  EXPECT_EQ(e.Find(Tier::kDynamics)->passed_count(), 0);
  EXPECT_EQ(e.Find(Tier::kStatic)->passed_count(), 7);
}

}  // namespace
}  // namespace cwm
