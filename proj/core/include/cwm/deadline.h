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

#ifndef CWM_DEADLINE_H_
#define CWM_DEADLINE_H_

#include <chrono>
#include <optional>

namespace cwm {

class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  static Deadline Never() { return Deadline(); }
  static Deadline After(std::chrono::milliseconds budget) {
    return Deadline(Clock::now() + budget);
  }

  bool never() const { return !at_.has_value(); }
  bool Expired() const { return at_ && Clock::now() >= *at_; }

  // Time left, clamped at zero; `cap` when the deadline is unbounded.
  std::chrono::milliseconds RemainingOr(std::chrono::milliseconds cap) const {
    if (!at_) return cap;
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        *at_ - Clock::now());
    if (left.count() < 0) return std::chrono::milliseconds(0);
    return left < cap ? left : cap;
  }

 private:
  Deadline() = default;
  explicit Deadline(Clock::time_point at) : at_(at) {}

  std::optional<Clock::time_point> at_;
};

}  // namespace cwm

#endif  // CWM_DEADLINE_H_
