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

#include "cwm/tier_dynamics.h"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwm/errors.h"
#include "cwm/rng.h"

namespace cwm {
namespace {

struct Transition {
  StateHandle from;
  ActionId action;
  StateHandle to;
  bool chance = false;
  bool mutated = false;
};

// Tracks one property across walks: first failure message plus a count.
class Property {
 public:
  explicit Property(std::string name) : name_(std::move(name)) {}

  void Fail(int walk, const std::string& message) {
    if (walk == last_walk_) return;
    last_walk_ = walk;
    if (failures_++ == 0) {
      first_ = "walk " + std::to_string(walk) + ": " + message;
    }
  }
  void Report(TierReport& report, int n_walks) const {
    report.Add(name_, failures_ == 0);
    if (failures_ > 0) {
      report.Note(name_ + " failed on " + std::to_string(failures_) + " of " +
                  std::to_string(n_walks) + " walks; first at " + first_);
    }
  }

 private:
  std::string name_;
  int failures_ = 0;
  int last_walk_ = -1;
  std::string first_;
};

class DynamicsFuzzer {
 public:
  DynamicsFuzzer(const SessionFactory& factory, const FuzzConfig& config,
                 const GameSpec& spec)
      : factory_(factory),
        config_(config),
        spec_(spec),
        max_steps_(config.max_walk_steps > 0 ? config.max_walk_steps
                                             : spec.max_walk_steps),
        rng_(config.rng_seed) {}

  TierReport Run() {
    for (int walk = 0; walk < config_.n_trajectories; ++walk) {
      if (!session_ || !session_->alive()) session_ = factory_();
      Walk(walk);
    }
    if (session_) session_->Close();

    TierReport report;
    report.tier = Tier::kDynamics;
    no_crash_.Report(report, config_.n_trajectories);
    immutable_.Report(report, config_.n_trajectories);
    deterministic_.Report(report, config_.n_trajectories);
    terminal_empty_.Report(report, config_.n_trajectories);
    if (truncated_ > 0) {
      report.Note("possible non-termination: " + std::to_string(truncated_) +
                  " walks hit the " + std::to_string(max_steps_) +
                  "-step cap");
    }
    return report;
  }

 private:
  void Walk(int walk) {
    Session& session = *session_;
    std::vector<Transition> transitions;
    try {
      StateHandle state = session.InitialState().state;
      bool finished = false;
      for (int step = 0; step < max_steps_; ++step) {
        const PlayerId player = CurrentPlayerOf(session, state);
        const std::vector<ActionId> legal = LegalActionsOf(session, state);
        if (IsTerminalPlayer(player)) {
          if (!legal.empty()) {
            terminal_empty_.Fail(walk, "terminal state at step " +
                                           std::to_string(step) + " lists " +
                                           std::to_string(legal.size()) +
                                           " legal actions");
          }
          finished = true;
          break;
        }
        if (legal.empty()) {
          no_crash_.Fail(walk, "dead end: non-terminal state at step " +
                                   std::to_string(step) +
                                   " has no legal actions");
          finished = true;
          break;
        }
        Transition t;
        t.from = state;
        t.action = legal[UniformIndex(rng_, legal.size())];
        t.chance = IsChanceNode(spec_, player, legal);
        const ApplyResult result = session.ApplyAction(state, t.action);
        t.to = result.new_state;
        t.mutated = result.input_mutated;
        if (t.mutated) {
          immutable_.Fail(walk, "apply_action(\"" + t.action +
                                    "\") mutated its input at step " +
                                    std::to_string(step));
        }
        transitions.push_back(t);
        state = result.new_state;
      }
      if (!finished) ++truncated_;
      ProbeDeterminism(walk, transitions);
    } catch (const CandidateError& e) {
      no_crash_.Fail(walk, std::string(ErrorKindName(e.kind())) + ": " +
                               e.what());
    }
  }

  void ProbeDeterminism(int walk, const std::vector<Transition>& transitions) {
    std::vector<const Transition*> eligible;
    for (const auto& t : transitions) {
      if (!t.chance && !t.mutated) eligible.push_back(&t);
    }
    if (eligible.empty()) return;
    const Transition& t = *eligible[UniformIndex(rng_, eligible.size())];
    Session& session = *session_;
    const Fingerprint first = session.StateFingerprint(t.to);
    const ApplyResult again = session.ApplyAction(t.from, t.action);
    const Fingerprint second = session.StateFingerprint(again.new_state);
    if (first != second) {
      deterministic_.Fail(walk, "re-applying \"" + t.action +
                                    "\" gave a different successor");
    }
  }

  const SessionFactory& factory_;
  const FuzzConfig& config_;
  const GameSpec& spec_;
  const int max_steps_;
  Rng rng_;
  std::unique_ptr<Session> session_;
  Property no_crash_{std::string(kDynamicsChecks[0])};
  Property immutable_{std::string(kDynamicsChecks[1])};
  Property deterministic_{std::string(kDynamicsChecks[2])};
  Property terminal_empty_{std::string(kDynamicsChecks[3])};
  int truncated_ = 0;
};

}  // namespace

void FuzzConfig::Validate() const {
  if (n_trajectories < 1) {
    throw std::invalid_argument("n_trajectories must be at least 1");
  }
  if (max_walk_steps < 0) {
    throw std::invalid_argument("max_walk_steps must be non-negative");
  }
}

TierReport RunDynamics(const SessionFactory& factory, const FuzzConfig& config,
                       const GameSpec& spec) {
  config.Validate();
  return DynamicsFuzzer(factory, config, spec).Run();
}

}  // namespace cwm
