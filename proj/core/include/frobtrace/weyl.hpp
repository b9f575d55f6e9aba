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

// The 13 mu-admissible elements of GSp4 for mu = (1,1,0,0), recovered from
// permissible alcoves.
//
// An alcove is (x_0, x_1, x_2, x_3) in (Z^4)^4, extended by x_4 = x_0 + 1,
// subject to
//   (i)   x_0 <= x_1 <= x_2 <= x_3 <= x_0 + 1 componentwise,
//   (ii)  sum(x_{i+1}) = sum(x_i) + 1,
//   (iii) x_{4-i} = d + theta(x_i) for one integer d and i = 0..4,
//         with theta(v1,v2,v3,v4) = (-v4,-v3,-v2,-v1).
// It is permissible when sum(x_0) = 2 and omega_i <= x_i <= omega_i + 1 with
// omega_i = (1^i, 0^(4-i)). The difference vectors are t_i = x_i - omega_i.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace frobtrace {

using IntVec4 = std::array<int, 4>;
using BitVec4 = std::array<std::uint8_t, 4>;

struct Alcove {
  std::array<IntVec4, 4> x{};
  friend bool operator==(const Alcove&, const Alcove&) = default;
};

/// Conditions (i)-(iii); d is searched over {0, 1, 2}.
bool is_alcove(const Alcove& alcove);
/// The d in {0,1,2} realizing condition (iii), if any.
std::optional<int> duality_shift(const Alcove& alcove);
/// Conditions (a) and (b). Assumes is_alcove().
bool is_permissible(const Alcove& alcove);
/// x_i = omega_i + t_i.
Alcove alcove_from_differences(const std::array<BitVec4, 4>& t);

enum class AdmLabel : std::uint8_t {
  s010, s102, s201, s212,  // length 3, the translations
  s01, s12, s10, s02, s21,  // length 2
  s0, s1, s2,               // length 1
  tau,                      // length 0, the worst point
};

inline constexpr std::size_t kAdmissibleCount = 13;

struct AdmElement {
  AdmLabel id;
  std::string_view label;  // e.g. "s02τ"
  std::string_view ascii;  // e.g. "s02tau"
  int length;
  std::array<BitVec4, 3> diff;  // t_0, t_1, t_2
  BitVec4 translation;          // lambda in w = t_lambda * (finite part)
};

/// The reference table of admissible elements, ordered as AdmLabel.
std::span<const AdmElement> admissible_table();
const AdmElement& adm(AdmLabel id);
/// Accepts the UTF-8 label, the ASCII alias, or "t" as shorthand for tau.
std::optional<AdmLabel> parse_label(std::string_view text);

/// Exhaustive search over x_i in omega_i + {0,1}^4, matched against the
/// reference table. Throws InvariantError unless exactly 13 elements appear
/// and each matches a distinct table row.
std::vector<AdmElement> enumerate_admissible();

/// The permissible alcove found for an element (fourth vector included).
Alcove alcove_of(const AdmElement& elem);

inline int length(const AdmElement& elem) { return elem.length; }

std::string format_bits(const BitVec4& v);

}  // namespace frobtrace
