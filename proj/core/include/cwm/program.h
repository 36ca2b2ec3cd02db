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

#ifndef CWM_PROGRAM_H_
#define CWM_PROGRAM_H_

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cwm/session.h"
#include "cwm/value.h"

namespace cwm {

// In-process analogue of a candidate module: the function contract over an
// opaque state object. Reference games and crafted mutants implement this.

class ProgramState {
 public:
  virtual ~ProgramState() = default;
  virtual std::unique_ptr<ProgramState> Clone() const = 0;
  virtual bool Equals(const ProgramState& other) const = 0;
  // Structured rendering of the full state content (fingerprints, Tier 1).
  virtual Value ToValue() const = 0;
};

struct ProgramManifest {
  bool load_ok = true;
  std::optional<std::string> load_error;
  std::set<std::string> functions;
  std::optional<std::string> resample_source;

  static ProgramManifest AllFunctions();
};

struct HistoryEntry {
  Value observation;
  std::optional<ActionId> action;
};

class GameProgram {
 public:
  virtual ~GameProgram() = default;

  virtual ProgramManifest Manifest() const = 0;
  // nullptr models a candidate returning None.
  virtual std::unique_ptr<ProgramState> InitialState() = 0;
  // Takes the input by mutable reference, like a Python dict argument; a
  // correct program leaves it untouched.
  virtual std::unique_ptr<ProgramState> ApplyAction(ProgramState& state,
                                                    const ActionId& action) = 0;
  virtual Value CurrentPlayer(const ProgramState& state) = 0;
  virtual Value LegalActions(const ProgramState& state) = 0;
  virtual Value Rewards(const ProgramState& state) = 0;
  virtual Value Observations(const ProgramState& state) = 0;
  virtual std::string PlayerName(PlayerId player);
  virtual Value ResampleHistory(const std::vector<HistoryEntry>& history,
                                PlayerId player);
};

// Hosts a GameProgram behind the Session contract: handle table, structural
// snapshot mutation probing, exception-to-CandidateError translation.
class InProcessSession final : public Session {
 public:
  explicit InProcessSession(std::shared_ptr<GameProgram> program);

  SessionInfo Info() override;
  InitialResult InitialState() override;
  ApplyResult ApplyAction(StateHandle state, const ActionId& action) override;
  Value CurrentPlayer(StateHandle state) override;
  Value LegalActions(StateHandle state) override;
  Value Rewards(StateHandle state) override;
  Value Observations(StateHandle state) override;
  std::string PlayerName(PlayerId player) override;
  Fingerprint StateFingerprint(StateHandle state) override;
  Value Resample(std::span<const ResampleRecord> records,
                 PlayerId player) override;
  void Close() override;
  bool alive() const override { return !closed_; }

  std::size_t handle_count() const { return states_.size(); }

 private:
  void Require(const char* function) const;
  ProgramState& Lookup(StateHandle handle);
  StateHandle Store(std::unique_ptr<ProgramState> state);

  std::shared_ptr<GameProgram> program_;
  ProgramManifest manifest_;
  std::vector<std::unique_ptr<ProgramState>> states_;
  bool closed_ = false;
};

// Convenience for typed reference states.
template <typename Derived>
class ClonableState : public ProgramState {
 public:
  std::unique_ptr<ProgramState> Clone() const override {
    return std::make_unique<Derived>(static_cast<const Derived&>(*this));
  }
  bool Equals(const ProgramState& other) const override {
    const auto* o = dynamic_cast<const Derived*>(&other);
    return o != nullptr && static_cast<const Derived&>(*this) == *o;
  }

 protected:
  friend bool operator==(const ClonableState&, const ClonableState&) {
    return true;
  }
};

}  // namespace cwm

#endif  // CWM_PROGRAM_H_
