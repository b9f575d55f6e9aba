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

#include <stdexcept>
#include <string>

namespace frobtrace {

/// Invalid construction parameters (bad prime, degree out of range, malformed chart).
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed the configured tuple budget.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact integer result does not fit the 64-bit trace width.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A mathematical invariant failed at runtime. Always an implementation bug,
/// never bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace frobtrace
