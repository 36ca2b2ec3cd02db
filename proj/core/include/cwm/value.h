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

#ifndef CWM_VALUE_H_
#define CWM_VALUE_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace cwm {

// Recursive structured value: map with string keys, list, string, number,
// boolean or null. Game states and observations cross process boundaries in
// this form.
using Value = nlohmann::json;

using ActionId = std::string;
using PlayerId = int;

inline constexpr PlayerId kTerminalPlayer = -4;
inline constexpr PlayerId kChancePlayer = -1;

inline bool IsTerminalPlayer(PlayerId p) { return p == kTerminalPlayer; }

// "map", "list", "string", "number", "boolean" or "null".
std::string_view ValueKindName(const Value& value);

// Fixed-length (64 char) lowercase hex SHA-256 digest of a canonical encoding.
class Fingerprint {
 public:
  Fingerprint() = default;
  // Throws std::invalid_argument unless `hex` is 64 lowercase hex characters.
  explicit Fingerprint(std::string hex);

  const std::string& hex() const { return hex_; }
  bool empty() const { return hex_.empty(); }

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;

 private:
  std::string hex_;
};

// Returns a copy of `value` in canonical form: integral numbers with
// magnitude <= 2^53 become integers, -0.0 becomes 0. Throws
// CanonicalizationError on NaN or infinity.
Value Canonicalize(const Value& value);

// Compact JSON text of Canonicalize(value): object keys in byte order, no
// whitespace, shortest round-trip decimals, raw UTF-8.
std::string CanonicalEncoding(const Value& value);

Fingerprint CanonicalFingerprint(const Value& value);

// SHA-256 of arbitrary bytes as lowercase hex.
std::string Sha256Hex(std::string_view bytes);

}  // namespace cwm

#endif  // CWM_VALUE_H_
