// Copyright 2026 The frobtrace Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License").
// You may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing,
// software distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions
// and limitations under the License.

#pragma once

#include <cstdint>
#include <string>

#include "frobtrace/error.hpp"

namespace frobtrace {

/// Exact integer type for traces and test-function values.
using Int = std::int64_t;

inline Int checked_add(Int a, Int b) {
  Int out{};
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in addition");
  return out;
}

inline Int checked_mul(Int a, Int b) {
  Int out{};
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in multiplication");
  return out;
}

inline Int checked_pow(Int base, unsigned exponent) {
  Int out = 1;
  for (unsigned i = 0; i < exponent; ++i) out = checked_mul(out, base);
  return out;
}

}  // namespace frobtrace
