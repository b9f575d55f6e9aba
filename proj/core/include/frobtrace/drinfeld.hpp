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

// The good Drinfeld case for GL_n: special-fiber points are tuples of
// Oort-Tate parameters (a_0, ..., a_{n-1}) with some a_i = 0, and strata are
// the subsets S = {i : a_i = 0}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobtrace/checked.hpp"
#include "frobtrace/gf.hpp"

namespace frobtrace {

inline constexpr int kMaxDrinfeldRank = 4;

struct DrinfeldPoint {
  std::vector<FqElement> a;
};

/// Bitmask of the vanishing coordinates. Throws std::invalid_argument if no
/// coordinate vanishes.
std::uint32_t drinfeld_stratum(const FieldCtx& ctx, const DrinfeldPoint& P);

/// prod_{i not in S} #{t : t^(p-1) = a_i} * (1-q)^(|S|-1).
Int trace_drinfeld(const FieldCtx& ctx, const DrinfeldPoint& P);

/// (q-1)^n * phi_{r,1}(t w^-1): 0 if some i outside S has N(t_i) != 1, else
/// (p-1)^(n-|S|) (1-q)^(|S|-1). Requires S nonempty.
Int phi_scaled_drinfeld(const FieldCtx& ctx, const std::vector<FqElement>& t, std::uint32_t S, int n);

/// a_i, or 1 where a_i = 0.
std::vector<FqElement> drinfeld_s_x(const FieldCtx& ctx, const DrinfeldPoint& P);

struct DrinfeldReport {
  int n = 0;
  std::uint64_t points = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::optional<std::string> witness;
  bool ok() const { return failed == 0; }
};

/// Exhausts F_q^n minus (F_q^x)^n. Throws LimitError if q^n > limit and
/// std::invalid_argument if n is outside [1, 4].
DrinfeldReport verify_drinfeld(const FieldCtx& ctx, int n, std::uint64_t limit = 100'000'000);

}  // namespace frobtrace
