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

#include "frobtrace/drinfeld.hpp"

#include <bit>
#include <stdexcept>

#include "frobtrace/error.hpp"

namespace frobtrace {

std::uint32_t drinfeld_stratum(const FieldCtx& ctx, const DrinfeldPoint& P) {
  std::uint32_t S = 0;
  for (std::size_t i = 0; i < P.a.size(); ++i)
    if (ctx.is_zero(P.a[i])) S |= 1u << i;
  if (S == 0) throw std::invalid_argument("not a special-fiber point: every parameter is nonzero");
  return S;
}

Int trace_drinfeld(const FieldCtx& ctx, const DrinfeldPoint& P) {
  const std::uint32_t S = drinfeld_stratum(ctx, P);
  Int out = checked_pow(1 - static_cast<Int>(ctx.q()), static_cast<unsigned>(std::popcount(S) - 1));
  for (std::size_t i = 0; i < P.a.size(); ++i)
    if (!(S >> i & 1u)) out = checked_mul(out, static_cast<Int>(ctx.count_root_solutions(P.a[i])));
  return out;
}

Int phi_scaled_drinfeld(const FieldCtx& ctx, const std::vector<FqElement>& t, std::uint32_t S, int n) {
  if (S == 0) throw std::invalid_argument("stratum must be nonempty");
  for (int i = 0; i < n; ++i)
    if (!(S >> i & 1u) && ctx.norm(t[static_cast<std::size_t>(i)]) != ctx.one()) return 0;
  const int s = std::popcount(S);
  return checked_mul(checked_pow(static_cast<Int>(ctx.p()) - 1, static_cast<unsigned>(n - s)),
                     checked_pow(1 - static_cast<Int>(ctx.q()), static_cast<unsigned>(s - 1)));
}

std::vector<FqElement> drinfeld_s_x(const FieldCtx& ctx, const DrinfeldPoint& P) {
  std::vector<FqElement> s = P.a;
  for (auto& v : s)
    if (ctx.is_zero(v)) v = ctx.one();
  return s;
}

DrinfeldReport verify_drinfeld(const FieldCtx& ctx, int n, std::uint64_t limit) {
  if (n < 1 || n > kMaxDrinfeldRank) throw std::invalid_argument("n must satisfy 1 <= n <= 4, got " + std::to_string(n));
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= ctx.q();
  if (total > limit)
    throw LimitError("q^n = " + std::to_string(total) + " tuples exceeds the enumeration limit " + std::to_string(limit));

  DrinfeldReport rep;
  rep.n = n;
  DrinfeldPoint P{std::vector<FqElement>(static_cast<std::size_t>(n))};
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rem = code;
    bool any_zero = false;
    for (int i = n; i-- > 0;) {
      P.a[static_cast<std::size_t>(i)] = ctx.element(rem % ctx.q());
      rem /= ctx.q();
      any_zero = any_zero || ctx.is_zero(P.a[static_cast<std::size_t>(i)]);
    }
    if (!any_zero) continue;
    ++rep.points;
    const Int lhs = trace_drinfeld(ctx, P);
    const Int rhs = phi_scaled_drinfeld(ctx, drinfeld_s_x(ctx, P), drinfeld_stratum(ctx, P), n);
    if (lhs == rhs) {
      ++rep.passed;
    } else {
      ++rep.failed;
      if (!rep.witness) {
        std::string w = "(";
        for (int i = 0; i < n; ++i) w += (i ? "," : "") + ctx.format(P.a[static_cast<std::size_t>(i)]);
        rep.witness = w + "): trace " + std::to_string(lhs) + " vs " + std::to_string(rhs);
      }
    }
  }
  return rep;
}

}  // namespace frobtrace
