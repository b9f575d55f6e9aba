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
#include "frobtrace/localmodel.hpp"

#include <algorithm>
#include <limits>

#include "frobtrace/error.hpp"

namespace frobtrace {

bool on_special_fiber(const FieldCtx& ctx, const ModelPoint& P) {
  if (!ctx.is_zero(ctx.mul(P.x, P.y))) return false;
  const FqElement rel =
      ctx.add(ctx.add(ctx.mul(P.a, P.x), ctx.mul(P.b, P.y)), ctx.mul(ctx.mul(P.a, P.b), P.c));
  return ctx.is_zero(rel);
}

OTQuadruple ot_params(const FieldCtx& ctx, const ModelPoint& P) {
  return {P.x, ctx.add(P.x, ctx.mul(P.b, P.c)), ctx.add(P.y, ctx.mul(P.a, P.c)), P.y};
}

std::array<bool, 4> ot_nonzero_pattern(AdmLabel w) {
  switch (w) {
    case AdmLabel::s010: return {false, false, true, true};
    case AdmLabel::s102: return {true, false, true, false};
    case AdmLabel::s201: return {false, true, false, true};
    case AdmLabel::s212: return {true, true, false, false};
    case AdmLabel::s01: return {false, false, false, true};
    case AdmLabel::s12: return {true, false, false, false};
    case AdmLabel::s10: return {false, false, true, false};
    case AdmLabel::s21: return {false, true, false, false};
    default: return {false, false, false, false};
  }
}

std::array<bool, 4> ot_nonzero_pattern(const FieldCtx& ctx, const OTQuadruple& ot) {
  return {!ctx.is_zero(ot.b0), !ctx.is_zero(ot.b1), !ctx.is_zero(ot.a1), !ctx.is_zero(ot.a0)};
}

MatrixChain matrix_chain(const FieldCtx& ctx, const ModelPoint& P) {
  const FqElement zero = ctx.zero();
  const FqElement one = ctx.one();
  const FqElement yac = ctx.add(P.y, ctx.mul(P.a, P.c));
  MatrixChain m;
  m.F[0] = Mat42{{{one, zero}, {zero, one}, {P.x, P.b}, {ctx.neg(ctx.mul(P.x, P.c)), P.x}}};
  m.F[1] = Mat42{{{ctx.neg(ctx.mul(P.b, P.y)), P.y},
                  {one, zero},
                  {zero, one},
                  {ctx.add(P.x, ctx.mul(P.b, P.c)), ctx.neg(P.c)}}};
  m.F[2] = Mat42{{{yac, P.a}, {ctx.mul(P.c, yac), yac}, {one, zero}, {zero, one}}};
  return m;
}

namespace {

// Rows of F_{i+1} that carry the identity block.
constexpr std::array<std::array<int, 2>, 3> kIdentityRows{{{0, 1}, {1, 2}, {2, 3}}};

bool column_in_span(const FieldCtx& ctx, const Mat42& target, int target_index,
                    const std::array<FqElement, 4>& v) {
  const auto [r0, r1] = kIdentityRows[static_cast<std::size_t>(target_index)];
  const FqElement c0 = v[static_cast<std::size_t>(r0)];
  const FqElement c1 = v[static_cast<std::size_t>(r1)];
  for (std::size_t j = 0; j < 4; ++j) {
    const FqElement w = ctx.add(ctx.mul(target[j][0], c0), ctx.mul(target[j][1], c1));
    if (w != v[j]) return false;
  }
  return true;
}

}  // namespace

bool containments_hold(const FieldCtx& ctx, const MatrixChain& chain, const FqElement& uniformizer) {
  for (int i = 0; i < 2; ++i) {
    const Mat42& src = chain.F[static_cast<std::size_t>(i)];
    for (std::size_t col = 0; col < 2; ++col) {
      std::array<FqElement, 4> v{};
      for (std::size_t j = 0; j < 4; ++j) v[j] = src[j][col];
      v[static_cast<std::size_t>(i)] = ctx.mul(v[static_cast<std::size_t>(i)], uniformizer);
      if (!column_in_span(ctx, chain.F[static_cast<std::size_t>(i + 1)], i + 1, v)) return false;
    }
  }
  return true;
}

FqElement minor(const FieldCtx& ctx, const MatrixChain& chain, int i, const BitVec4& rows) {
  std::array<std::size_t, 2> sel{};
  std::size_t k = 0;
  for (std::size_t j = 0; j < 4; ++j) {
    if (rows[j] == 0) continue;
    if (k == 2) throw InvariantError("difference vector " + format_bits(rows) + " has more than two ones");
    sel[k++] = j;
  }
  if (k != 2) throw InvariantError("difference vector " + format_bits(rows) + " has fewer than two ones");
  const Mat42& F = chain.F[static_cast<std::size_t>(i)];
  return ctx.sub(ctx.mul(F[sel[0]][0], F[sel[1]][1]), ctx.mul(F[sel[0]][1], F[sel[1]][0]));
}

std::vector<AdmLabel> minor_candidates(const FieldCtx& ctx, const ModelPoint& P) {
  const MatrixChain chain = matrix_chain(ctx, P);
  std::vector<AdmLabel> out;
  for (const auto& e : admissible_table()) {
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i)
      ok = !ctx.is_zero(minor(ctx, chain, i, e.diff[static_cast<std::size_t>(i)]));
    if (ok) out.push_back(e.id);
  }
  return out;
}

AdmLabel classify_by_minors(const FieldCtx& ctx, const ModelPoint& P) {
  const auto cands = minor_candidates(ctx, P);
  if (cands.empty()) throw InvariantError("no admissible element at " + format_point(ctx, P));
  int best = -1;
  int ties = 0;
  AdmLabel w = cands.front();
  for (AdmLabel c : cands) {
    const int l = adm(c).length;
    if (l > best) {
      best = l;
      ties = 1;
      w = c;
    } else if (l == best) {
      ++ties;
    }
  }
  if (ties != 1)
    throw InvariantError("maximal-length element is not unique at " + format_point(ctx, P));
  return w;
}

AdmLabel classify(const FieldCtx& ctx, const ModelPoint& P) {
  const AdmLabel w = classify_by_minors(ctx, P);
  if (ot_nonzero_pattern(ctx, ot_params(ctx, P)) != ot_nonzero_pattern(w))
    throw InvariantError("OT zero pattern disagrees with stratum " + std::string(adm(w).ascii) + " at " +
                         format_point(ctx, P));
  return w;
}

std::uint64_t special_fiber_tuple_bound(const FieldCtx& ctx) {
  std::uint64_t n = 1;
  for (int i = 0; i < 5; ++i) {
    if (n > std::numeric_limits<std::uint64_t>::max() / ctx.q()) return std::numeric_limits<std::uint64_t>::max();
    n *= ctx.q();
  }
  return n;
}

void check_enumeration_limit(const FieldCtx& ctx, std::uint64_t limit) {
  const std::uint64_t n = special_fiber_tuple_bound(ctx);
  if (n > limit)
    throw LimitError("q^5 = " + std::to_string(n) + " tuples exceeds the enumeration limit " + std::to_string(limit));
}

std::vector<std::pair<FqElement, FqElement>> special_fiber_xy(const FieldCtx& ctx) {
  std::vector<std::pair<FqElement, FqElement>> out;
  const auto all = ctx.enumerate();
  for (const auto& x : all)
    for (const auto& y : all)
      if (ctx.is_zero(ctx.mul(x, y))) out.emplace_back(x, y);
  return out;
}

void for_each_point_over(const FieldCtx& ctx, const FqElement& x, const FqElement& y,
                         const std::function<void(const ModelPoint&)>& visit) {
  const auto all = ctx.enumerate();
  for (const auto& a : all) {
    for (const auto& b : all) {
      const FqElement lin = ctx.add(ctx.mul(a, x), ctx.mul(b, y));
      const FqElement ab = ctx.mul(a, b);
      if (ctx.is_zero(ab)) {
        if (!ctx.is_zero(lin)) continue;
        for (const auto& c : all) visit(ModelPoint{x, y, a, b, c});
      } else {
        visit(ModelPoint{x, y, a, b, ctx.neg(ctx.div(lin, ab))});
      }
    }
  }
}

std::vector<ModelPoint> enumerate_special_fiber(const FieldCtx& ctx, std::uint64_t limit) {
  check_enumeration_limit(ctx, limit);
  std::vector<ModelPoint> out;
  out.reserve(special_fiber_count(ctx.q()));
  for (const auto& [x, y] : special_fiber_xy(ctx))
    for_each_point_over(ctx, x, y, [&](const ModelPoint& P) { out.push_back(P); });
  return out;
}

std::uint64_t special_fiber_count(std::uint64_t q) { return q * q * (3 * q - 2) + (q - 1) * (q - 1) * (q - 1); }

std::string format_point(const FieldCtx& ctx, const ModelPoint& P) {
  return "(" + ctx.format(P.x) + "," + ctx.format(P.y) + "," + ctx.format(P.a) + "," + ctx.format(P.b) + "," +
         ctx.format(P.c) + ")";
}

}  // namespace frobtrace
