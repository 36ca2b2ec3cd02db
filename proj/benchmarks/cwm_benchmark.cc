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

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "benchmark/benchmark.h"
#include "cwm/protocol/wire_session.h"
#include "cwm/registry.h"
#include "cwm/solver/mcts.h"
#include "cwm/tier_dynamics.h"
#include "cwm/tier_information.h"
#include "cwm/value.h"

namespace cwm {
namespace {

const char* const kGames[] = {"tic_tac_toe", "kuhn_poker", "leduc_poker",
                              "generalized_tic_tac_toe"};

void BM_CanonicalFingerprint(benchmark::State& state) {
  const ReferenceGame game = MakeGame("leduc_poker");
  auto session = game.NewSession();
  const Value observations = session->Observations(session->InitialState().state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(CanonicalFingerprint(observations));
  }
}
BENCHMARK(BM_CanonicalFingerprint);

void BM_DynamicsFuzz(benchmark::State& state) {
  const ReferenceGame game = MakeGame(kGames[state.range(0)]);
  FuzzConfig config;
  config.n_trajectories = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunDynamics(game.Factory(), config, game.spec));
  }
  state.SetLabel(game.spec.name);
  state.SetItemsProcessed(state.iterations() * config.n_trajectories);
}
BENCHMARK(BM_DynamicsFuzz)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_InformationProbes(benchmark::State& state) {
  const ReferenceGame game = MakeGame(kGames[state.range(0)]);
  ProbeConfig config;
  config.n_probes = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunInformation(game.Factory(), config, game.spec));
  }
  state.SetLabel(game.spec.name);
  state.SetItemsProcessed(state.iterations() * config.n_probes);
}
BENCHMARK(BM_InformationProbes)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_MctsChoose(benchmark::State& state) {
  const ReferenceGame game = MakeGame("tic_tac_toe");
  auto session = game.NewSession();
  const StateHandle root = session->InitialState().state;
  SearchConfig config;
  config.n_simulations = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(MctsChoose(*session, game.spec, root, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MctsChoose)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_IsmctsChoose(benchmark::State& state) {
  const ReferenceGame game = MakeGame("kuhn_poker");
  auto session = game.NewSession();
  WalkRecord walk = StartWalk(*session, game.spec);
  auto skip_chance = [&] {
    while (walk.current().acting_player == kChancePlayer) {
      AdvanceWalk(*session, game.spec, walk,
                  LegalActionsOf(*session, walk.current().state).front());
    }
  };
  skip_chance();
  AdvanceWalk(*session, game.spec, walk,
              LegalActionsOf(*session, walk.current().state).back());
  skip_chance();
  const PlayerId player = walk.current().acting_player;
  SearchConfig config;
  config.n_simulations = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        IsmctsChoose(*session, game.spec, walk, player, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IsmctsChoose)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_WireRoundTrip(benchmark::State& state) {
  char dir[] = "/tmp/cwm-bench-XXXXXX";
  if (::mkdtemp(dir) == nullptr) {
    state.SkipWithError("mkdtemp failed");
    return;
  }
  const std::string path = std::string(dir) + "/candidate.json";
  std::ofstream(path) << R"({"builtin": "tic_tac_toe"})";
  auto session = WireSession::Open({CWM_BUILTIN_ADAPTER, "--stdio"}, path, "");
  const StateHandle root = session->InitialState().state;
  for (auto _ : state) {
    benchmark::DoNotOptimize(session->LegalActions(root));
  }
  session->Close();
  std::remove(path.c_str());
  ::rmdir(dir);
}
BENCHMARK(BM_WireRoundTrip)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace cwm

BENCHMARK_MAIN();
