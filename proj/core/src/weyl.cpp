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
#include "frobtrace/weyl.hpp"

#include <algorithm>
#include <numeric>

#include "frobtrace/error.hpp"

namespace frobtrace {

namespace {

constexpr BitVec4 B(int a, int b, int c, int d) {
  return {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c),
          static_cast<std::uint8_t>(d)};
}

constexpr std::array<AdmElement, kAdmissibleCount> kTable{{
    {AdmLabel::s010, "s010τ", "s010tau", 3, {B(1, 1, 0, 0), B(1, 1, 0, 0), B(1, 1, 0, 0)}, B(1, 1, 0, 0)},
    {AdmLabel::s102, "s102τ", "s102tau", 3, {B(0, 1, 0, 1), B(0, 1, 0, 1), B(0, 1, 0, 1)}, B(0, 1, 0, 1)},
    {AdmLabel::s201, "s201τ", "s201tau", 3, {B(1, 0, 1, 0), B(1, 0, 1, 0), B(1, 0, 1, 0)}, B(1, 0, 1, 0)},
    {AdmLabel::s212, "s212τ", "s212tau", 3, {B(0, 0, 1, 1), B(0, 0, 1, 1), B(0, 0, 1, 1)}, B(0, 0, 1, 1)},
    {AdmLabel::s01, "s01τ", "s01tau", 2, {B(1, 1, 0, 0), B(1, 1, 0, 0), B(1, 0, 1, 0)}, B(1, 1, 0, 0)},
    {AdmLabel::s12, "s12τ", "s12tau", 2, {B(0, 1, 0, 1), B(0, 1, 0, 1), B(0, 0, 1, 1)}, B(0, 1, 0, 1)},
    {AdmLabel::s10, "s10τ", "s10tau", 2, {B(1, 1, 0, 0), B(0, 1, 0, 1), B(0, 1, 0, 1)}, B(1, 1, 0, 0)},
    {AdmLabel::s02, "s02τ", "s02tau", 2, {B(1, 0, 1, 0), B(0, 1, 1, 0), B(1, 0, 1, 0)}, B(1, 0, 1, 0)},
    {AdmLabel::s21, "s21τ", "s21tau", 2, {B(1, 0, 1, 0), B(0, 0, 1, 1), B(0, 0, 1, 1)}, B(1, 0, 1, 0)},
    {AdmLabel::s0, "s0τ", "s0tau", 1, {B(1, 1, 0, 0), B(0, 1, 1, 0), B(1, 0, 1, 0)}, B(1, 1, 0, 0)},
    {AdmLabel::s1, "s1τ", "s1tau", 1, {B(1, 1, 0, 0), B(0, 1, 0, 1), B(0, 0, 1, 1)}, B(1, 1, 0, 0)},
    {AdmLabel::s2, "s2τ", "s2tau", 1, {B(1, 0, 1, 0), B(0, 1, 1, 0), B(0, 0, 1, 1)}, B(1, 0, 1, 0)},
    {AdmLabel::tau, "τ", "tau", 0, {B(1, 1, 0, 0), B(0, 1, 1, 0), B(0, 0, 1, 1)}, B(1, 1, 0, 0)},
}};

IntVec4 omega(int i) {
  IntVec4 w{};
  for (int j = 0; j < i && j < 4; ++j) w[static_cast<std::size_t>(j)] = 1;
  return w;
}

int sum(const IntVec4& v) { return std::accumulate(v.begin(), v.end(), 0); }

IntVec4 plus_one(IntVec4 v) {
  for (auto& c : v) ++c;
  return v;
}

bool leq(const IntVec4& a, const IntVec4& b) {
  for (std::size_t j = 0; j < 4; ++j)
    if (a[j] > b[j]) return false;
  return true;
}

IntVec4 theta(const IntVec4& v) { return {-v[3], -v[2], -v[1], -v[0]}; }

// x_0..x_3 plus the periodic x_4 = x_0 + 1.
std::array<IntVec4, 5> extended(const Alcove& a) {
  return {a.x[0], a.x[1], a.x[2], a.x[3], plus_one(a.x[0])};
}

}  // namespace

std::optional<int> duality_shift(const Alcove& alcove) {
  const auto ext = extended(alcove);
  for (int d = 0; d <= 2; ++d) {
    bool ok = true;
    for (std::size_t i = 0; i <= 4 && ok; ++i) {
      IntVec4 rhs = theta(ext[i]);
      for (auto& c : rhs) c += d;
      ok = ext[4 - i] == rhs;
    }
    if (ok) return d;
  }
  return std::nullopt;
}

bool is_alcove(const Alcove& alcove) {
  const auto ext = extended(alcove);
  for (std::size_t i = 0; i < 4; ++i) {
    if (!leq(ext[i], ext[i + 1])) return false;
    if (sum(ext[i + 1]) != sum(ext[i]) + 1) return false;
  }
  return duality_shift(alcove).has_value();
}

bool is_permissible(const Alcove& alcove) {
  if (sum(alcove.x[0]) != 2) return false;
  for (int i = 0; i < 4; ++i) {
    const IntVec4 w = omega(i);
    if (!leq(w, alcove.x[static_cast<std::size_t>(i)])) return false;
    if (!leq(alcove.x[static_cast<std::size_t>(i)], plus_one(w))) return false;
  }
  return true;
}

Alcove alcove_from_differences(const std::array<BitVec4, 4>& t) {
  Alcove a;
  for (int i = 0; i < 4; ++i) {
    const IntVec4 w = omega(i);
    for (std::size_t j = 0; j < 4; ++j)
      a.x[static_cast<std::size_t>(i)][j] = w[j] + t[static_cast<std::size_t>(i)][j];
  }
  return a;
}

std::span<const AdmElement> admissible_table() { return kTable; }

const AdmElement& adm(AdmLabel id) { return kTable[static_cast<std::size_t>(id)]; }

std::optional<AdmLabel> parse_label(std::string_view text) {
  if (text == "t") return AdmLabel::tau;
  for (const auto& e : kTable)
    if (text == e.label || text == e.ascii) return e.id;
  return std::nullopt;
}

namespace {

std::vector<std::array<BitVec4, 4>> permissible_differences() {
  std::vector<std::array<BitVec4, 4>> found;
  std::array<BitVec4, 16> bits{};
  for (int m = 0; m < 16; ++m)
    bits[static_cast<std::size_t>(m)] = B((m >> 3) & 1, (m >> 2) & 1, (m >> 1) & 1, m & 1);
  for (const auto& t0 : bits)
    for (const auto& t1 : bits)
      for (const auto& t2 : bits)
        for (const auto& t3 : bits) {
          const std::array<BitVec4, 4> t{t0, t1, t2, t3};
          const Alcove a = alcove_from_differences(t);
          if (is_alcove(a) && is_permissible(a)) found.push_back(t);
        }
  return found;
}

}  // namespace

std::vector<AdmElement> enumerate_admissible() {
  const auto found = permissible_differences();
  if (found.size() != kAdmissibleCount)
    throw InvariantError("permissible alcove count is " + std::to_string(found.size()) + ", expected 13");

  std::vector<AdmElement> out;
  std::array<bool, kAdmissibleCount> used{};
  for (const auto& t : found) {
    const std::array<BitVec4, 3> key{t[0], t[1], t[2]};
    auto it = std::find_if(kTable.begin(), kTable.end(), [&](const AdmElement& e) { return e.diff == key; });
    if (it == kTable.end())
      throw InvariantError("permissible alcove " + format_bits(t[0]) + " " + format_bits(t[1]) + " " +
                           format_bits(t[2]) + " has no table row");
    const auto k = static_cast<std::size_t>(it->id);
    if (used[k]) throw InvariantError("two alcoves share the row of " + std::string(it->ascii));
    used[k] = true;
    out.push_back(*it);
  }
  std::sort(out.begin(), out.end(), [](const AdmElement& a, const AdmElement& b) { return a.id < b.id; });
  return out;
}

Alcove alcove_of(const AdmElement& elem) {
  for (const auto& t : permissible_differences())
    if (t[0] == elem.diff[0] && t[1] == elem.diff[1] && t[2] == elem.diff[2]) return alcove_from_differences(t);
  throw InvariantError("no permissible alcove for " + std::string(elem.ascii));
}

std::string format_bits(const BitVec4& v) {
  std::string s = "(";
  for (auto b : v) s += static_cast<char>('0' + b);
  return s + ")";
}

}  // namespace frobtrace
