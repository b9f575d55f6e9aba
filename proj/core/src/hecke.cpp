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

#include "frobtrace/hecke.hpp"

#include <boost/rational.hpp>

#include "frobtrace/error.hpp"
#include "frobtrace/nearby.hpp"

namespace frobtrace {

bool satisfies_similitude(const FieldCtx& ctx, const TorusElement& s) {
  return ctx.mul(s.g[0], s.g[3]) == ctx.mul(s.g[1], s.g[2]);
}

TorusElement norm(const FieldCtx& ctx, const TorusElement& s) {
  TorusElement out;
  for (std::size_t i = 0; i < 4; ++i) out.g[i] = ctx.norm(s.g[i]);
  return out;
}

bool in_A(const FieldCtx& ctx, AdmLabel w, const TorusElement& t) {
  const auto& g = t.g;
  const FqElement one = ctx.one();
  auto prod = [&](std::size_t i, std::size_t j) { return ctx.mul(g[i], g[j]); };
  switch (w) {
    case AdmLabel::s010: return g[2] == one && g[3] == one && g[0] == g[1];
    case AdmLabel::s102: return g[0] == one && g[2] == one && g[1] == g[3];
    case AdmLabel::s201: return g[1] == one && g[3] == one && g[0] == g[2];
    case AdmLabel::s212: return g[0] == one && g[1] == one && g[2] == g[3];
    case AdmLabel::s01: return g[3] == one && g[0] == prod(1, 2);
    case AdmLabel::s12: return g[0] == one && g[3] == prod(1, 2);
    case AdmLabel::s10: return g[2] == one && g[1] == prod(0, 3);
    case AdmLabel::s21: return g[1] == one && g[2] == prod(0, 3);
    case AdmLabel::s02: return g[0] == g[1];
    case AdmLabel::s0:
    case AdmLabel::s1:
    case AdmLabel::s2: return true;
    case AdmLabel::tau: return g[0] == g[1] && g[2] == g[3];
  }
  return false;
}

std::string subgroup_predicate(AdmLabel w) {
  switch (w) {
    case AdmLabel::s010: return "g2=g3=1, g0=g1";
    case AdmLabel::s102: return "g0=g2=1, g1=g3";
    case AdmLabel::s201: return "g1=g3=1, g0=g2";
    case AdmLabel::s212: return "g0=g1=1, g2=g3";
    case AdmLabel::s01: return "g3=1, g0=g1*g2";
    case AdmLabel::s12: return "g0=1, g3=g1*g2";
    case AdmLabel::s10: return "g2=1, g1=g0*g3";
    case AdmLabel::s21: return "g1=1, g2=g0*g3";
    case AdmLabel::s02: return "g0=g1";
    case AdmLabel::s0:
    case AdmLabel::s1:
    case AdmLabel::s2: return "all of T(F_p)";
    case AdmLabel::tau: return "g0=g1, g2=g3";
  }
  return {};
}

TorusElement s_x(const FieldCtx& ctx, const ModelPoint& P, AdmLabel w) {
  if (w == AdmLabel::s02) return TorusElement{{P.a, P.b, P.a, P.b}};
  TorusElement s{ot_params(ctx, P).as_array()};
  for (auto& v : s.g)
    if (ctx.is_zero(v)) v = ctx.one();
  return s;
}

std::array<std::optional<FqElement>, 4> t_x(const FieldCtx& ctx, const ModelPoint& P) {
  std::array<std::optional<FqElement>, 4> out;
  const auto ot = ot_params(ctx, P).as_array();
  for (std::size_t i = 0; i < 4; ++i)
    if (!ctx.is_zero(ot[i])) out[i] = ctx.norm(ot[i]);
  return out;
}

namespace {

using Q = boost::rational<Int>;

Q qpow(Q base, int e) {
  Q out = 1;
  if (e < 0) {
    base = Q(1) / base;
    e = -e;
  }
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

Q phi_prime_q(const FieldCtx& ctx, const TorusElement& s, AdmLabel w) {
  const Q p(static_cast<Int>(ctx.p()));
  const Q one_minus_q(1 - static_cast<Int>(ctx.q()));
  const bool member = in_A(ctx, w, norm(ctx, s));
  switch (adm(w).length) {
    case 3: return member ? Q(-1) * (p - 1) * (p - 1) * qpow(one_minus_q, -3) : Q(0);
    case 2: return member ? Q(-1) * (p - 1) * qpow(one_minus_q, -2) : Q(0);
    case 1: return Q(-1) * qpow(one_minus_q, -1);
    default: {
      const Q q(static_cast<Int>(ctx.q()));
      return member ? Q(-1) * (Q(1) + (p - 1) * q * qpow(one_minus_q, -2)) : Q(-1);
    }
  }
}

}  // namespace

Rational phi_prime(const FieldCtx& ctx, const TorusElement& s, AdmLabel w) {
  const Q v = phi_prime_q(ctx, s, w);
  return {v.numerator(), v.denominator()};
}

Int phi_scaled(const FieldCtx& ctx, const TorusElement& s, AdmLabel w) {
  if (ctx.q() > kMaxTraceQ)
    throw OverflowError("q = " + std::to_string(ctx.q()) + " exceeds the exact-integer bound " +
                        std::to_string(kMaxTraceQ));
  const Q scaled = qpow(Q(static_cast<Int>(ctx.q()) - 1), 3) * phi_prime_q(ctx, s, w);
  if (scaled.denominator() != 1)
    throw InvariantError("scaled test function is not an integer for " + std::string(adm(w).ascii));
  return scaled.numerator();
}

}  // namespace frobtrace
