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

#include "cwm/value.h"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <stdexcept>

#include "cwm/errors.h"

namespace cwm {
namespace {

constexpr double kMaxExactInteger = 9007199254740992.0;  // 2^53

bool IsLowerHex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
}

}  // namespace

std::string_view ValueKindName(const Value& value) {
  switch (value.type()) {
    case Value::value_t::object:
      return "map";
    case Value::value_t::array:
      return "list";
    case Value::value_t::string:
      return "string";
    case Value::value_t::number_integer:
    case Value::value_t::number_unsigned:
    case Value::value_t::number_float:
      return "number";
    case Value::value_t::boolean:
      return "boolean";
    default:
      return "null";
  }
}

Fingerprint::Fingerprint(std::string hex) : hex_(std::move(hex)) {
  if (hex_.size() != 64) {
    throw std::invalid_argument("fingerprint must be 64 hex characters");
  }
  for (char c : hex_) {
    if (!IsLowerHex(c)) {
      throw std::invalid_argument("fingerprint must be lowercase hex");
    }
  }
}

Value Canonicalize(const Value& value) {
  switch (value.type()) {
    case Value::value_t::object: {
      Value out = Value::object();
      for (const auto& [key, item] : value.items()) {
        out[key] = Canonicalize(item);
      }
      return out;
    }
    case Value::value_t::array: {
      Value out = Value::array();
      for (const auto& item : value) out.push_back(Canonicalize(item));
      return out;
    }
    case Value::value_t::number_float: {
      const double x = value.get<double>();
      if (!std::isfinite(x)) {
        throw CanonicalizationError("non-finite number in structured value");
      }
      if (std::trunc(x) == x && std::fabs(x) <= kMaxExactInteger) {
        return Value(static_cast<std::int64_t>(x));
      }
      return value;
    }
    case Value::value_t::number_unsigned:
      if (value.get<std::uint64_t>() <=
          static_cast<std::uint64_t>(INT64_MAX)) {
        return Value(value.get<std::int64_t>());
      }
      return value;
    case Value::value_t::binary:
    case Value::value_t::discarded:
      throw CanonicalizationError("unsupported value type");
    default:
      return value;
  }
}

std::string CanonicalEncoding(const Value& value) {
  try {
    return Canonicalize(value).dump(-1, ' ', /*ensure_ascii=*/false,
                                     Value::error_handler_t::strict);
  } catch (const Value::type_error& e) {
    throw CanonicalizationError(e.what());
  }
}

std::string Sha256Hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length,
                 EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

Fingerprint CanonicalFingerprint(const Value& value) {
  return Fingerprint(Sha256Hex(CanonicalEncoding(value)));
}

}  // namespace cwm
