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

#include "frobtrace/nearby.hpp"

#include <stdexcept>

#include "frobtrace/error.hpp"

namespace frobtrace {

Int local_trace(int branches, std::uint64_t q) {
  if (branches < 1) throw std::invalid_argument("branch count must be at least 1, got " + std::to_string(branches));
  return checked_pow(1 - static_cast<Int>(q), static_cast<unsigned>(branches - 1));
}

namespace {

using Assign = std::vector<std::pair<std::string, Expr>>;

Assign assign(std::initializer_list<std::pair<const char*, const char*>> items) {
  Assign out;
  for (const auto& [k, v] : items) out.emplace_back(k, Expr::parse(v));
  return out;
}

Loop field_loop(const char* var, Loop::Domain d) { return Loop{var, d, {}, {}}; }

Loop range_loop(const char* var, const char* lo, const char* hi) {
  return Loop{var, Loop::Domain::kRange, IntExpr::parse(lo), IntExpr::parse(hi)};
}

Segment single(const char* description, const char* chart, Assign a) {
  return Segment{description, {}, chart, std::move(a), {}};
}

// Fiber of sigma_1 over a point with x = y = a = b = 0: the chart points
// (1:lambda), (1:0), (0:1) of Proj F_q[xt, bt]. The first two are shared by
// s1 and the worst point.
Segment lambda_segment() {
  return Segment{"(1:lambda)",
                 {field_loop("lambda", Loop::Domain::kUnits)},
                 "cover(bt)",
                 assign({{"x", "0"}, {"a", "0"}, {"bt", "-lambda"}, {"c", "-c-1/lambda"}}),
                 {}};
}

Segment one_zero_segment() {
  return single("(1:0)", "cover(1+bt*c)", assign({{"x", "0"}, {"y", "0"}, {"bt", "0"}, {"c", "c"}}));
}

}  // namespace

std::vector<FiberRecipe> recipes() {
  std::vector<FiberRecipe> out;
  auto len3 = [&](AdmLabel w, const char* g1, const char* g2) {
    out.push_back({w, {single("open", "V1[length3]", assign({{"g1", g1}, {"g2", g2}, {"u0", "0"}}))}});
  };
  auto len2 = [&](AdmLabel w, const char* g) {
    out.push_back({w, {single("open", "V1[length2]", assign({{"g", g}, {"u1", "0"}, {"v1", "0"}}))}});
  };

  out.push_back({AdmLabel::s010,
                 {single("open", "V1[s010]", assign({{"y", "y"}, {"a", "a"}, {"c", "c"}, {"u0", "0"}}))}});
  len3(AdmLabel::s102, "b0", "a1");
  len3(AdmLabel::s201, "b1", "a0");
  len3(AdmLabel::s212, "b0", "b1");
  out.push_back(
      {AdmLabel::s01, {single("open", "V1[s01]", assign({{"y", "y"}, {"a", "a"}, {"u1", "0"}, {"v1", "0"}}))}});
  len2(AdmLabel::s12, "b0");
  len2(AdmLabel::s10, "a1");
  out.push_back({AdmLabel::s02,
                 {single("cover", "s02-cover", assign({{"a", "a"}, {"b", "b"}, {"x", "0"}, {"c", "0"}}))}});
  len2(AdmLabel::s21, "b1");
  // s0 is the mirror of s2 with a in the role of the unit b.
  out.push_back({AdmLabel::s0,
                 {single("cover", "s0s2-cover", assign({{"x", "0"}, {"a", "0"}, {"b", "a"}, {"c", "0"}}))}});
  out.push_back({AdmLabel::s1,
                 {lambda_segment(), one_zero_segment(),
                  single("(0:1)", "U''[bt=1,v1t=1]", assign({{"a", "0"}, {"b", "0"}, {"c", "c"}, {"v0t", "0"}}))}});
  out.push_back({AdmLabel::s2,
                 {single("cover", "s0s2-cover", assign({{"x", "0"}, {"a", "0"}, {"b", "b"}, {"c", "0"}}))}});

  // Over (0:1) the fiber is P^1 x P^1 in (alpha, delta), with infinity
  // identified with 0 in each factor; each point then carries the tower of
  // blow-ups of E_0.
  const Loop alpha = field_loop("alpha", Loop::Domain::kProjectiveLine);
  const Loop delta = field_loop("delta", Loop::Domain::kProjectiveLine);
  out.push_back({AdmLabel::tau,
                 {lambda_segment(), one_zero_segment(),
                  Segment{"tower layer",
                          {alpha, delta, range_loop("j", "1", "p-2"), field_loop("beta", Loop::Domain::kField)},
                          "R{j-1}",
                          assign({{"rt", "beta"}, {"s", "alpha"}, {"t", "delta"}, {"e", "0"}, {"f", "0"}}),
                          "beta"},
                  Segment{"tower end",
                          {alpha, delta},
                          "E{p-2}",
                          assign({{"s", "alpha"}, {"t", "delta"}, {"f", "0"}, {"e", "0"}}),
                          {}}}});
  return out;
}

FieldEnv base_env(const FieldCtx& ctx, const ModelPoint& P) {
  const OTQuadruple ot = ot_params(ctx, P);
  return {{"x", P.x},   {"y", P.y},   {"a", P.a},   {"b", P.b},   {"c", P.c},
          {"b0", ot.b0}, {"b1", ot.b1}, {"a1", ot.a1}, {"a0", ot.a0}};
}

NearbyEngine::NearbyEngine(const FieldCtx& ctx) : ctx_(ctx), charts_(atlas(ctx.p())), recipes_(recipes()) {
  if (ctx.q() > kMaxTraceQ)
    throw OverflowError("q = " + std::to_string(ctx.q()) + " exceeds the exact-integer bound " +
                        std::to_string(kMaxTraceQ));
}

namespace {

struct LeafContext {
  const FieldCtx& ctx;
  const std::vector<Chart>& charts;
  const Segment& seg;
  std::vector<FiberRow>* rows;
  bool check_zero_sums;
};

std::uint64_t count_roots(const FieldCtx& ctx, const FqElement& v, Int e) {
  if (e == static_cast<Int>(ctx.p()) - 1) return ctx.count_root_solutions(v);
  std::uint64_t n = 0;
  for (const auto& t : ctx.enumerate())
    if (ctx.pow(t, static_cast<std::int64_t>(e)) == v) ++n;
  return n;
}

FqElement first_root(const FieldCtx& ctx, const FqElement& v, Int e) {
  for (std::uint64_t i = 0; i < ctx.q(); ++i) {
    const FqElement t = ctx.element(i);
    if (ctx.pow(t, static_cast<std::int64_t>(e)) == v) return t;
  }
  throw InvariantError("no root found");
}

void add_row(std::vector<FiberRow>* rows, FiberRow row) {
  if (!rows) return;
  for (auto& r : *rows) {
    if (r.segment == row.segment && r.chart == row.chart && r.branches == row.branches) {
      r.points += row.points;
      r.contribution = checked_add(r.contribution, row.contribution);
      return;
    }
  }
  rows->push_back(std::move(row));
}

Int leaf(const LeafContext& lc, const FieldEnv& env, const IntEnv& ints) {
  const FieldCtx& ctx = lc.ctx;
  const std::string name = expand_template(lc.seg.chart, ints);
  const Chart* ch = find_chart(lc.charts, name);
  if (!ch) throw InvariantError("segment " + lc.seg.description + " names missing chart " + name);

  FieldEnv pt;
  for (const auto& [coord, expr] : lc.seg.assign) {
    auto v = expr.eval(ctx, env, ints);
    if (!v) throw InvariantError("segment " + lc.seg.description + ": " + coord + " = " + expr.text() + " undefined");
    pt[coord] = *v;
  }
  std::uint64_t points = 1;
  for (const auto& r : ch->roots) {
    auto v = r.value.eval(ctx, pt, ints);
    if (!v) throw InvariantError("chart " + name + ": root value " + r.value.text() + " undefined at fiber point");
    const Int e = r.exponent.eval(ints);
    const std::uint64_t n = count_roots(ctx, *v, e);
    points *= n;
    pt[r.coord] = n == 0 ? ctx.one() : first_root(ctx, *v, e);
  }
  for (const auto& c : ch->coords)
    if (!pt.count(c)) throw InvariantError("chart " + name + ": coordinate " + c + " left unassigned");

  int branches = 0;
  for (const auto& m : ch->monomial)
    if (ctx.is_zero(pt.at(m.coord))) ++branches;

  if (points > 0) {
    for (const auto& u : ch->units) {
      auto v = u.eval(ctx, pt, ints);
      if (!v || ctx.is_zero(*v)) throw InvariantError("chart " + name + ": unit " + u.text() + " vanishes at fiber point");
    }
    for (const auto& rel : ch->relations) {
      auto v = rel.eval(ctx, pt, ints);
      if (!v || !ctx.is_zero(*v)) throw InvariantError("chart " + name + ": relation " + rel.text() + " fails");
    }
    auto M = ch->p_equation.eval(ctx, pt, ints);
    if (!M || !ctx.is_zero(*M)) throw InvariantError("chart " + name + ": fiber point is off the special fiber");
  }

  const Int contribution = points == 0 ? 0 : checked_mul(static_cast<Int>(points), local_trace(branches, ctx.q()));
  add_row(lc.rows, FiberRow{lc.seg.description, name, points, branches, contribution});
  return contribution;
}

Int walk(const LeafContext& lc, std::size_t k, FieldEnv& env, IntEnv& ints) {
  const auto& loops = lc.seg.loops;
  while (k < loops.size() && (env.count(loops[k].var) || ints.count(loops[k].var))) ++k;
  if (k == loops.size()) return leaf(lc, env, ints);

  const Loop& L = loops[k];
  Int sum = 0;
  auto visit = [&](const FqElement& v) {
    env[L.var] = v;
    sum = checked_add(sum, walk(lc, k + 1, env, ints));
  };
  switch (L.domain) {
    case Loop::Domain::kField:
      for (const auto& v : lc.ctx.enumerate()) visit(v);
      break;
    case Loop::Domain::kUnits:
      for (const auto& v : lc.ctx.enumerate())
        if (!lc.ctx.is_zero(v)) visit(v);
      break;
    case Loop::Domain::kProjectiveLine:
      for (const auto& v : lc.ctx.enumerate()) visit(v);
      visit(lc.ctx.zero());
      break;
    case Loop::Domain::kRange: {
      const Int lo = L.lo.eval(ints);
      const Int hi = L.hi.eval(ints);
      for (Int j = lo; j <= hi; ++j) {
        ints[L.var] = j;
        sum = checked_add(sum, walk(lc, k + 1, env, ints));
      }
      ints.erase(L.var);
      break;
    }
  }
  if (L.domain != Loop::Domain::kRange) env.erase(L.var);
  if (lc.check_zero_sums && L.var == lc.seg.zero_sum_over && sum != 0)
    throw InvariantError("segment " + lc.seg.description + ": sum over " + L.var + " is " + std::to_string(sum) +
                         ", expected 0");
  return sum;
}

Int run_segment(const FieldCtx& ctx, const std::vector<Chart>& charts, const Segment& seg, FieldEnv env, IntEnv ints,
                std::vector<FiberRow>* rows, bool check_zero_sums) {
  ints["p"] = static_cast<Int>(ctx.p());
  const LeafContext lc{ctx, charts, seg, rows, check_zero_sums};
  return walk(lc, 0, env, ints);
}

}  // namespace

Int NearbyEngine::evaluate_segment(const Segment& seg, const FieldEnv& env, std::vector<FiberRow>* rows) const {
  return run_segment(ctx_, charts_, seg, env, {}, rows, true);
}

TraceReport NearbyEngine::trace_at(const ModelPoint& P) const { return trace_at(P, classify(ctx_, P)); }

TraceReport NearbyEngine::trace_at(const ModelPoint& P, AdmLabel w) const {
  TraceReport rep{P, w, 0, {}};
  const FieldEnv env = base_env(ctx_, P);
  for (const auto& seg : recipes_[static_cast<std::size_t>(w)].segments)
    rep.trace = checked_add(rep.trace, evaluate_segment(seg, env, &rep.fiber_detail));
  return rep;
}

const Segment& NearbyEngine::find_segment(AdmLabel w, const std::string& description) const {
  for (const auto& s : recipes_[static_cast<std::size_t>(w)].segments)
    if (s.description == description) return s;
  throw InvariantError("no segment " + description + " in recipe " + std::string(adm(w).ascii));
}

Int NearbyEngine::tower_trace_E0(const FqElement& alpha, const FqElement& delta) const {
  FieldEnv env = base_env(ctx_, ModelPoint{});
  env["alpha"] = alpha;
  env["delta"] = delta;
  return checked_add(evaluate_segment(find_segment(AdmLabel::tau, "tower layer"), env, nullptr),
                     evaluate_segment(find_segment(AdmLabel::tau, "tower end"), env, nullptr));
}

Int NearbyEngine::layer_sum(Int j, const FqElement& alpha, const FqElement& delta) const {
  FieldEnv env = base_env(ctx_, ModelPoint{});
  env["alpha"] = alpha;
  env["delta"] = delta;
  return run_segment(ctx_, charts_, find_segment(AdmLabel::tau, "tower layer"), env, {{"j", j}}, nullptr, false);
}

Int NearbyEngine::s1_lambda_sum(const FqElement& gamma) const {
  ModelPoint P{};
  P.c = gamma;
  return evaluate_segment(find_segment(AdmLabel::s1, "(1:lambda)"), base_env(ctx_, P), nullptr);
}

Int NearbyEngine::tower_sum() const {
  std::vector<FqElement> line = ctx_.enumerate();
  line.push_back(ctx_.zero());
  Int sum = 0;
  for (const auto& a : line)
    for (const auto& d : line) sum = checked_add(sum, tower_trace_E0(a, d));
  return sum;
}

std::vector<std::string> NearbyEngine::closure_problems() const {
  std::vector<std::string> problems;
  const IntEnv p_env{{"p", static_cast<Int>(ctx_.p())}};
  for (const auto& rec : recipes_) {
    for (const auto& seg : rec.segments) {
      std::vector<IntEnv> envs{p_env};
      for (const auto& L : seg.loops) {
        if (L.domain != Loop::Domain::kRange) continue;
        std::vector<IntEnv> next;
        for (const auto& e : envs)
          for (Int j = L.lo.eval(e); j <= L.hi.eval(e); ++j) {
            IntEnv f = e;
            f[L.var] = j;
            next.push_back(f);
          }
        envs = std::move(next);
      }
      const std::string where = std::string(adm(rec.stratum).ascii) + "/" + seg.description;
      for (const auto& e : envs) {
        const std::string name = expand_template(seg.chart, e);
        const Chart* ch = find_chart(charts_, name);
        if (!ch) {
          problems.push_back(where + ": missing chart " + name);
          continue;
        }
        for (const auto& [coord, expr] : seg.assign) {
          if (!ch->has_coord(coord)) problems.push_back(where + ": " + name + " has no coordinate " + coord);
          if (ch->root_for(coord)) problems.push_back(where + ": " + coord + " is a root coordinate of " + name);
        }
        for (const auto& c : ch->coords) {
          bool bound = ch->root_for(c) != nullptr;
          for (const auto& [coord, expr] : seg.assign) bound = bound || coord == c;
          if (!bound) problems.push_back(where + ": coordinate " + c + " of " + name + " is unassigned");
        }
      }
      if (!seg.zero_sum_over.empty() && (seg.loops.empty() || seg.loops.back().var != seg.zero_sum_over))
        problems.push_back(where + ": zero-sum variable must be the innermost loop");
    }
  }
  return problems;
}

TraceReport trace_at(const FieldCtx& ctx, const ModelPoint& P) { return NearbyEngine(ctx).trace_at(P); }

}  // namespace frobtrace
