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

#include "cwm/mutants.h"

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <utility>

namespace cwm {

const std::string_view kStubResamplerSource =
    R"PY(def resample_history(obs_action_history, player_id):
    """Sample a full trajectory explaining the observations."""
    # Resampling is hard to get right here; give back an empty history.
    return []
)PY";

const std::string_view kEchoResamplerSource =
    R"PY(def resample_history(obs_action_history, player_id):
    """Sample a full trajectory explaining the observations."""
    # Placeholder: hand back the actions we already saw.
    return [action for _, action in obs_action_history]
)PY";

namespace {

struct MutantState final : ProgramState {
  std::unique_ptr<ProgramState> inner;
  int depth = 0;
  std::int64_t nonce = 0;

  std::unique_ptr<ProgramState> Clone() const override {
    auto copy = std::make_unique<MutantState>();
    copy->inner = inner ? inner->Clone() : nullptr;
    copy->depth = depth;
    copy->nonce = nonce;
    return copy;
  }
  bool Equals(const ProgramState& other) const override {
    const auto* o = dynamic_cast<const MutantState*>(&other);
    return o != nullptr && depth == o->depth && nonce == o->nonce &&
           inner->Equals(*o->inner);
  }
  Value ToValue() const override {
    Value v = inner->ToValue();
    if (nonce != 0 && v.is_object()) v["nonce"] = nonce;
    return v;
  }
};

MutantState& AsMutant(ProgramState& state) {
  return dynamic_cast<MutantState&>(state);
}
const MutantState& AsMutant(const ProgramState& state) {
  return dynamic_cast<const MutantState&>(state);
}

class MutantProgram final : public GameProgram {
 public:
  MutantProgram(MutantKind kind, std::shared_ptr<GameProgram> base)
      : kind_(kind), base_(std::move(base)) {}

  ProgramManifest Manifest() const override {
    ProgramManifest m = base_->Manifest();
    switch (kind_) {
      case MutantKind::kStubResampler:
        m.functions.insert("resample_history");
        m.resample_source = std::string(kStubResamplerSource);
        break;
      case MutantKind::kEchoResampler:
        m.functions.insert("resample_history");
        m.resample_source = std::string(kEchoResamplerSource);
        break;
      case MutantKind::kNoResampler:
        m.functions.erase("resample_history");
        m.resample_source.reset();
        break;
      case MutantKind::kMissingApi:
        m.functions.erase("observations");
        break;
      case MutantKind::kSyntaxError:
        m.load_ok = false;
        m.load_error =
            "SyntaxError: invalid syntax (candidate.py, line 12)";
        m.functions.clear();
        break;
      default:
        break;
    }
    return m;
  }

  std::unique_ptr<ProgramState> InitialState() override {
    auto state = std::make_unique<MutantState>();
    state->inner = base_->InitialState();
    if (!state->inner) return nullptr;
    return state;
  }

  std::unique_ptr<ProgramState> ApplyAction(ProgramState& state,
                                            const ActionId& action) override {
    MutantState& in = AsMutant(state);
    if (kind_ == MutantKind::kHangs) {
      for (;;) std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
    if (kind_ == MutantKind::kCrashesOnKey && in.depth >= 3) {
      throw std::out_of_range("KeyError: 'pot'");
    }
    const bool chance = base_->CurrentPlayer(*in.inner) == kChancePlayer;
    auto out = std::make_unique<MutantState>();
    out->inner = base_->ApplyAction(*in.inner, action);
    out->depth = in.depth + 1;
    if (kind_ == MutantKind::kMutatesInput) {
      in.inner = out->inner->Clone();
      in.depth = out->depth;
    }
    if (kind_ == MutantKind::kNondeterministic && !chance) {
      out->nonce = ++nonce_counter_;
    }
    return out;
  }

  Value CurrentPlayer(const ProgramState& state) override {
    return base_->CurrentPlayer(*AsMutant(state).inner);
  }

  Value LegalActions(const ProgramState& state) override {
    const MutantState& s = AsMutant(state);
    const bool terminal = base_->CurrentPlayer(*s.inner) == kTerminalPlayer;
    if (kind_ == MutantKind::kTerminalActions && terminal) {
      return Value::array({"noop"});
    }
    if (kind_ == MutantKind::kDeadEnd && s.depth == 2 && !terminal) {
      return Value::array();
    }
    return base_->LegalActions(*s.inner);
  }

  Value Rewards(const ProgramState& state) override {
    Value rewards = base_->Rewards(*AsMutant(state).inner);
    if (kind_ == MutantKind::kScalarRewards) return rewards.at(0);
    return rewards;
  }

  Value Observations(const ProgramState& state) override {
    return base_->Observations(*AsMutant(state).inner);
  }

  std::string PlayerName(PlayerId player) override {
    return base_->PlayerName(player);
  }

  Value ResampleHistory(const std::vector<HistoryEntry>& history,
                        PlayerId player) override {
    switch (kind_) {
      case MutantKind::kStubResampler:
        return Value::array();
      case MutantKind::kEchoResampler: {
        Value out = Value::array();
        for (const HistoryEntry& entry : history) {
          out.push_back(entry.action ? Value(*entry.action) : Value(nullptr));
        }
        return out;
      }
      default:
        return base_->ResampleHistory(history, player);
    }
  }

 private:
  MutantKind kind_;
  std::shared_ptr<GameProgram> base_;
  std::int64_t nonce_counter_ = 0;
};

}  // namespace

const std::vector<MutantName>& MutantNames() {
  static const std::vector<MutantName> kNames = {
      {MutantKind::kMutatesInput, "mutant_mutating"},
      {MutantKind::kCrashesOnKey, "mutant_crash_key"},
      {MutantKind::kNondeterministic, "mutant_nondeterministic"},
      {MutantKind::kTerminalActions, "mutant_terminal_actions"},
      {MutantKind::kDeadEnd, "mutant_dead_end"},
      {MutantKind::kHangs, "mutant_hanging"},
      {MutantKind::kScalarRewards, "mutant_scalar_rewards"},
      {MutantKind::kStubResampler, "mutant_stub_resampler"},
      {MutantKind::kEchoResampler, "mutant_echo_resampler"},
      {MutantKind::kNoResampler, "mutant_no_resampler"},
      {MutantKind::kMissingApi, "mutant_missing_api"},
      {MutantKind::kSyntaxError, "mutant_syntax_error"},
  };
  return kNames;
}

std::optional<MutantKind> MutantKindFromName(std::string_view name) {
  for (const auto& entry : MutantNames()) {
    if (entry.name == name) return entry.kind;
  }
  return std::nullopt;
}

std::shared_ptr<GameProgram> MakeMutant(MutantKind kind,
                                        std::shared_ptr<GameProgram> base) {
  return std::make_shared<MutantProgram>(kind, std::move(base));
}

}  // namespace cwm
