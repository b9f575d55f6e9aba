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


#include <gtest/gtest.h>

#include <vector>

#include "frobtrace/error.hpp"
#include "frobtrace/hecke.hpp"

namespace frobtrace {
namespace {

TorusElement t4(const FieldCtx& ctx, int a, int b, int c, int d) {
  return {{ctx.from_int(a), ctx.from_int(b), ctx.from_int(c), ctx.from_int(d)}};
}

ModelPoint pt(const FieldCtx& ctx, int x, int y, int a, int b, int c) {
  return {ctx.from_int(x), ctx.from_int(y), ctx.from_int(a), ctx.from_int(b), ctx.from_int(c)};
}

TEST(Subgroups, Examples) {
  auto ctx = FieldCtx::make(3, 1);
  EXPECT_TRUE(in_A(ctx, AdmLabel::tau, t4(ctx, 1, 1, 1, 1)));
  EXPECT_FALSE(in_A(ctx, AdmLabel::s010, t4(ctx, 1, 1, 2, 2)));
  EXPECT_TRUE(in_A(ctx, AdmLabel::s010, t4(ctx, 2, 2, 1, 1)));
  EXPECT_TRUE(in_A(ctx, AdmLabel::s02, t4(ctx, 2, 2, 2, 2)));
  EXPECT_FALSE(in_A(ctx, AdmLabel::s02, t4(ctx, 1, 2, 1, 2)));
  EXPECT_EQ(subgroup_predicate(AdmLabel::s010), "g2=g3=1, g0=g1");
}

// Every A_w is a subgroup of (F_p^x)^4: contains 1, closed under products.
TEST(Subgroups, ClosedUnderMultiplication) {
  auto ctx = FieldCtx::make(5, 1);
  std::vector<TorusElement> all;
  for (int a = 1; a < 5; ++a)
    for (int b = 1; b < 5; ++b)
      for (int c = 1; c < 5; ++c)
        for (int d = 1; d < 5; ++d) all.push_back(t4(ctx, a, b, c, d));
  for (const auto& e : admissible_table()) {
    std::vector<TorusElement> members;
    for (const auto& s : all)
      if (in_A(ctx, e.id, s)) members.push_back(s);
    EXPECT_TRUE(in_A(ctx, e.id, t4(ctx, 1, 1, 1, 1))) << e.ascii;
    for (const auto& u : members)
      for (const auto& v : members) {
        TorusElement uv;
        for (std::size_t i = 0; i < 4; ++i) uv.g[i] = ctx.mul(u.g[i], v.g[i]);
        ASSERT_TRUE(in_A(ctx, e.id, uv)) << e.ascii;
      }
  }
}

TEST(SX, Examples) {
  auto ctx = FieldCtx::make(3, 1);
  EXPECT_EQ(s_x(ctx, pt(ctx, 0, 0, 0, 0, 0), AdmLabel::tau), t4(ctx, 1, 1, 1, 1));
  EXPECT_EQ(s_x(ctx, pt(ctx, 0, 1, 0, 0, 0), AdmLabel::s010), t4(ctx, 1, 1, 1, 1));
  EXPECT_EQ(s_x(ctx, pt(ctx, 0, 0, 1, 2, 0), AdmLabel::s02), t4(ctx, 1, 2, 1, 2));
  EXPECT_EQ(s_x(ctx, pt(ctx, 0, 2, 0, 0, 0), AdmLabel::s010), t4(ctx, 1, 1, 2, 2));
}

TEST(TX, Examples) {
  auto ctx = FieldCtx::make(3, 1);
  auto t = t_x(ctx, pt(ctx, 0, 1, 0, 0, 0));
  EXPECT_FALSE(t[0].has_value());
  EXPECT_FALSE(t[1].has_value());
  EXPECT_EQ(t[2], ctx.from_int(1));
  EXPECT_EQ(t[3], ctx.from_int(1));
  t = t_x(ctx, pt(ctx, 0, 2, 0, 0, 0));
  EXPECT_EQ(t[2], ctx.from_int(2));
  EXPECT_EQ(t[3], ctx.from_int(2));
  for (const auto& s : t_x(ctx, ModelPoint{})) EXPECT_FALSE(s.has_value());
}

TEST(Phi, Examples) {
  auto ctx = FieldCtx::make(3, 1);
  EXPECT_EQ(phi_scaled(ctx, t4(ctx, 1, 1, 1, 1), AdmLabel::tau), -20);
  EXPECT_EQ(phi_scaled(ctx, t4(ctx, 1, 1, 2, 2), AdmLabel::s010), 0);
  for (int a = 1; a < 3; ++a)
    for (int b = 1; b < 3; ++b) EXPECT_EQ(phi_scaled(ctx, t4(ctx, a, b, 1, 2), AdmLabel::s1), 4);
}

TEST(Phi, UnscaledRational) {
  auto ctx = FieldCtx::make(3, 1);
  // length 1: -(1-q)^-1 = 1/2 at q = 3
  auto v = phi_prime(ctx, t4(ctx, 1, 1, 1, 1), AdmLabel::s0);
  EXPECT_EQ(v.num, 1);
  EXPECT_EQ(v.den, 2);
  // length 3 member: -(p-1)^2 (1-q)^-3 = -4 / -8 = 1/2
  v = phi_prime(ctx, t4(ctx, 1, 1, 1, 1), AdmLabel::s010);
  EXPECT_EQ(v.num, 1);
  EXPECT_EQ(v.den, 2);
  v = phi_prime(ctx, t4(ctx, 1, 1, 2, 2), AdmLabel::s010);
  EXPECT_EQ(v.num, 0);
}

TEST(Phi, ScaledValuesByLength) {
  for (auto [p, r] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}, {7, 3}}) {
    auto ctx = FieldCtx::make(p, r);
    const Int q = static_cast<Int>(ctx.q());
    auto one = t4(ctx, 1, 1, 1, 1);
    EXPECT_EQ(phi_scaled(ctx, one, AdmLabel::s212), (p - 1) * (p - 1));
    EXPECT_EQ(phi_scaled(ctx, one, AdmLabel::s21), (p - 1) * (1 - q));
    EXPECT_EQ(phi_scaled(ctx, one, AdmLabel::s2), (1 - q) * (1 - q));
    EXPECT_EQ(phi_scaled(ctx, one, AdmLabel::tau), (1 - q) * (1 - q) * (1 - q) + (p - 1) * q * (1 - q));
  }
}

TEST(Phi, OverflowGuard) {
  auto ctx = FieldCtx::make(32749, 2);
  EXPECT_THROW(phi_scaled(ctx, TorusElement{{ctx.one(), ctx.one(), ctx.one(), ctx.one()}}, AdmLabel::tau),
               OverflowError);
}

}  // namespace
}  // namespace frobtrace
