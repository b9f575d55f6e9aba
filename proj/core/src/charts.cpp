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

#include "frobtrace/charts.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "frobtrace/error.hpp"

namespace frobtrace {

bool Chart::has_coord(const std::string& c) const {
  return std::find(coords.begin(), coords.end(), c) != coords.end();
}

bool Chart::in_monomial(const std::string& c) const {
  return std::any_of(monomial.begin(), monomial.end(), [&](const MonomialFactor& m) { return m.coord == c; });
}

const RootRelation* Chart::root_for(const std::string& c) const {
  for (const auto& r : roots)
    if (r.coord == c) return &r;
  return nullptr;
}

namespace {

void require_coords(const Chart& ch, const Expr& e, const char* where) {
  for (const auto& v : e.variables())
    if (!ch.has_coord(v))
      throw ConstructionError("chart " + ch.name + ": " + where + " \"" + e.text() + "\" uses unknown coordinate '" +
                              v + "'");
}

}  // namespace

Chart make_chart(const ChartSpec& spec) {
  Chart ch;
  ch.name = spec.name;
  ch.coords = spec.coords;
  ch.source = spec.source;
  ch.reduction = spec.reduction;
  const std::set<std::string> distinct(spec.coords.begin(), spec.coords.end());
  if (distinct.size() != spec.coords.size()) throw ConstructionError("chart " + ch.name + ": repeated coordinate");

  for (const auto& u : spec.units) {
    ch.units.push_back(Expr::parse(u));
    require_coords(ch, ch.units.back(), "unit");
  }
  for (const auto& [coord, exponent, value] : spec.roots) {
    if (!ch.has_coord(coord)) throw ConstructionError("chart " + ch.name + ": root of unknown coordinate " + coord);
    if (ch.root_for(coord)) throw ConstructionError("chart " + ch.name + ": two root relations for " + coord);
    ch.roots.push_back({coord, IntExpr::parse(exponent), Expr::parse(value)});
    require_coords(ch, ch.roots.back().value, "root value");
  }
  for (const auto& r : spec.relations) {
    ch.relations.push_back(Expr::parse(r));
    require_coords(ch, ch.relations.back(), "relation");
  }
  ch.p_equation = Expr::parse(spec.p_equation);
  require_coords(ch, ch.p_equation, "p-equation");
  if (spec.monomial.empty()) throw ConstructionError("chart " + ch.name + ": special fiber is not a monomial divisor");
  for (const auto& [coord, mult] : spec.monomial) {
    if (!ch.has_coord(coord))
      throw ConstructionError("chart " + ch.name + ": monomial uses unknown coordinate " + coord);
    if (mult < 1) throw ConstructionError("chart " + ch.name + ": nonpositive multiplicity for " + coord);
    ch.monomial.push_back({coord, mult});
  }
  ch.monomial_exponent = IntExpr::parse(spec.monomial_exponent);
  ch.unit_factor = Expr::parse(spec.unit_factor);
  require_coords(ch, ch.unit_factor, "unit factor");
  for (const auto& [base, value] : spec.base_map) {
    ch.base_map.push_back({base, Expr::parse(value)});
    require_coords(ch, ch.base_map.back().value, "base map");
  }
  if (!ch.base_map.empty()) {
    std::set<std::string> keys;
    for (const auto& b : ch.base_map) keys.insert(b.base);
    if (keys != std::set<std::string>{"x", "y", "a", "b", "c"})
      throw ConstructionError("chart " + ch.name + ": base map must give x, y, a, b, c");
  }
  return ch;
}

namespace {

using BaseMap = std::vector<std::pair<std::string, std::string>>;

BaseMap xt1_unit_map() {
  return {{"x", "x"}, {"y", "y"}, {"a", "-bt*y/(1+bt*c)"}, {"b", "bt*x"}, {"c", "c"}};
}

BaseMap xt1_bt_map() { return {{"x", "x"}, {"y", "a*c"}, {"a", "a"}, {"b", "-bt*x"}, {"c", "-c+1/bt"}}; }

}  // namespace

std::vector<Chart> atlas(std::uint32_t p) {
  std::vector<ChartSpec> specs;

  specs.push_back({.name = "U'[bt=1]",
                   .coords = {"xt", "a", "b", "c"},
                   .p_equation = "xt*a*b*c",
                   .monomial = {{"xt", 1}, {"a", 1}, {"b", 1}, {"c", 1}},
                   .monomial_exponent = "1",
                   .base_map = {{"x", "b*xt"}, {"y", "a*c"}, {"a", "-a"}, {"b", "b"}, {"c", "c-xt"}},
                   .source = "blow-up of U along (x, b); chart bt = 1"});
  specs.push_back({.name = "U'[xt=1]",
                   .coords = {"x", "y", "a", "bt", "c"},
                   .relations = {"a+bt*y+a*bt*c"},
                   .p_equation = "x*y",
                   .monomial = {{"x", 1}, {"y", 1}},
                   .monomial_exponent = "1",
                   .base_map = {{"x", "x"}, {"y", "y"}, {"a", "a"}, {"b", "bt*x"}, {"c", "c"}},
                   .source = "blow-up of U along (x, b); chart xt = 1"});
  specs.push_back({.name = "U'[xt=1,(1+bt*c)^-1]",
                   .coords = {"x", "y", "bt", "c"},
                   .units = {"1+bt*c"},
                   .p_equation = "x*y",
                   .monomial = {{"x", 1}, {"y", 1}},
                   .monomial_exponent = "1",
                   .base_map = xt1_unit_map(),
                   .source = "chart xt = 1 of the blow-up of U, localized at 1 + bt*c",
                   .reduction = "a = -bt*y/(1+bt*c) eliminated"});
  specs.push_back({.name = "U'[xt=1,bt^-1]",
                   .coords = {"x", "a", "bt", "c"},
                   .units = {"bt"},
                   .p_equation = "x*a*c",
                   .monomial = {{"x", 1}, {"a", 1}, {"c", 1}},
                   .monomial_exponent = "1",
                   .base_map = xt1_bt_map(),
                   .source = "chart xt = 1 of the blow-up of U, localized at bt",
                   .reduction = "y = a*c eliminated; c replaces 1/bt - c"});
  specs.push_back({.name = "cover(1+bt*c)",
                   .coords = {"x", "y", "bt", "c", "r", "s", "t"},
                   .units = {"1+bt*c"},
                   .roots = {{"r", "p-1", "x"}, {"s", "p-1", "y"}, {"t", "p-1", "1+bt*c"}},
                   .p_equation = "x*y",
                   .monomial = {{"r", 1}, {"s", 1}},
                   .base_map = xt1_unit_map(),
                   .source = "finite cover of the pro-p base change of U'[xt=1,(1+bt*c)^-1] by (p-1)-th roots",
                   .reduction = "u0 = s, v0 = r, u1 = s/t, v1 = r*t"});
  specs.push_back({.name = "cover(bt)",
                   .coords = {"x", "a", "bt", "c", "r", "s", "t"},
                   .units = {"bt"},
                   .roots = {{"r", "p-1", "x"}, {"s", "p-1", "a/bt"}, {"t", "p-1", "c*bt"}},
                   .p_equation = "x*a*c",
                   .monomial = {{"r", 1}, {"s", 1}, {"t", 1}},
                   .base_map = xt1_bt_map(),
                   .source = "finite cover of the pro-p base change of U'[xt=1,bt^-1] by (p-1)-th roots",
                   .reduction = "v0 = r, u1 = s, v1 = r*t, u0 = s*t"});
  specs.push_back({.name = "U''[bt=1,v0t=1]",
                   .coords = {"u1", "v0", "v1t", "a", "b", "xt"},
                   .roots = {{"u1", "p-1", "a*xt"}, {"v0", "p-1", "b*xt"}},
                   .p_equation = "v1t^(p-1)*a*b*xt^2",
                   .monomial = {{"u1", 1}, {"v0", 1}, {"v1t", 1}},
                   .base_map = {{"x", "b*xt"},
                                {"y", "a*xt*v1t^(p-1)"},
                                {"a", "-a"},
                                {"b", "b"},
                                {"c", "xt*v1t^(p-1)-xt"}},
                   .source = "blow-up of the pro-p chart over U'[bt=1] along (v0, v1); chart v0t = 1",
                   .reduction = "c = xt*v1t^(p-1), v1 = v0*v1t, u0 = u1*v1t eliminated"});
  specs.push_back({.name = "U''[bt=1,v1t=1]",
                   .coords = {"u0", "v1", "v0t", "a", "b", "c"},
                   .roots = {{"u0", "p-1", "a*c"}, {"v1", "p-1", "b*c"}},
                   .p_equation = "v0t^(p-1)*a*b*c^2",
                   .monomial = {{"u0", 1}, {"v1", 1}, {"v0t", 1}},
                   .base_map = {{"x", "b*c*v0t^(p-1)"},
                                {"y", "a*c"},
                                {"a", "-a"},
                                {"b", "b"},
                                {"c", "c-c*v0t^(p-1)"}},
                   .source = "blow-up of the pro-p chart over U'[bt=1] along (v0, v1); chart v1t = 1",
                   .reduction = "xt = c*v0t^(p-1), v0 = v1*v0t, u1 = u0*v0t eliminated"});
  specs.push_back({.name = "U''[xt=1,v0t=1]",
                   .coords = {"bt", "c", "u1", "v0", "v1t"},
                   .roots = {{"v1t", "p-1", "1+bt*c"}},
                   .p_equation = "(u1*v0*v1t)^(p-1)",
                   .monomial = {{"u1", 1}, {"v0", 1}, {"v1t", 1}},
                   .base_map = {{"x", "v0^(p-1)"},
                                {"y", "(u1*v1t)^(p-1)"},
                                {"a", "-bt*u1^(p-1)"},
                                {"b", "bt*v0^(p-1)"},
                                {"c", "c"}},
                   .source = "blow-up of the pro-p chart over U'[xt=1] along (v0, v1); chart v0t = 1",
                   .reduction = "x = v0^(p-1), u0 = u1*v1t, v1 = v0*v1t eliminated"});
  specs.push_back({.name = "U''[xt=1,v1t=1]",
                   .coords = {"bt", "c", "u0", "v1", "v0t"},
                   .units = {"v0t", "1+bt*c"},
                   .roots = {{"v0t", "p-1", "1/(1+bt*c)"}},
                   .p_equation = "(u0*v1*v0t)^(p-1)",
                   .monomial = {{"u0", 1}, {"v1", 1}},
                   .unit_factor = "v0t^(p-1)",
                   .base_map = {{"x", "(v1*v0t)^(p-1)"},
                                {"y", "u0^(p-1)"},
                                {"a", "-bt*(u0*v0t)^(p-1)"},
                                {"b", "bt*(v1*v0t)^(p-1)"},
                                {"c", "c"}},
                   .source = "blow-up of the pro-p chart over U'[xt=1] along (v0, v1); chart v1t = 1",
                   .reduction = "v0 = v1*v0t, u1 = u0*v0t eliminated; x*(1+bt*c) = v1^(p-1) forces "
                                "v0t^(p-1)*(1+bt*c) = 1"});

  for (std::uint32_t i = 0; i + 3 <= p; ++i) {
    const std::string k = std::to_string(i);
    specs.push_back({.name = "E" + k,
                     .coords = {"r", "s", "t", "e", "f"},
                     .relations = {"r^" + std::to_string(p - 1 - i) + "-e*f"},
                     .p_equation = "(r^2*s*t)^(p-1)",
                     .monomial = {{"r", 2}, {"s", 1}, {"t", 1}},
                     .source = i == 0 ? "chart of the blow-up of U'' along (u0, u1, v0, v1) over [bt=1]"
                                      : "chart of the blow-up of E" + std::to_string(i - 1) + " along (r, e)"});
    specs.push_back({.name = "R" + k,
                     .coords = {"rt", "s", "t", "e", "f"},
                     .p_equation = "(rt^2*e^2*s*t)^(p-1)",
                     .monomial = {{"rt", 2}, {"e", 2}, {"s", 1}, {"t", 1}},
                     .source = "second chart of the blow-up of E" + k + " along (r, e)"});
  }
  specs.push_back({.name = "E" + std::to_string(p - 2),
                   .coords = {"s", "t", "f", "e"},
                   .p_equation = "(e^2*f^2*s*t)^(p-1)",
                   .monomial = {{"e", 2}, {"f", 2}, {"s", 1}, {"t", 1}},
                   .source = p == 3 ? "chart of the blow-up of E0 along (r, e)"
                                    : "chart of the blow-up of E" + std::to_string(p - 3) + " along (r, e)",
                   .reduction = "r = e*f eliminated"});

  specs.push_back({.name = "V1[s010]",
                   .coords = {"y", "a", "c", "u0", "v0", "v1"},
                   .units = {"y", "y+a*c"},
                   .roots = {{"v0", "p-1", "y"}, {"v1", "p-1", "y+a*c"}},
                   .p_equation = "u0^(p-1)",
                   .monomial = {{"u0", 1}},
                   .base_map = {{"x", "u0^(p-1)/y"},
                                {"y", "y"},
                                {"a", "a"},
                                {"b", "-a*u0^(p-1)/(y*(y+a*c))"},
                                {"c", "c"}},
                   .source = "pro-p preimage of the open where y and y+a*c are units",
                   .reduction = "x = p/y, b = -a*x/(y+a*c) eliminated"});
  specs.push_back({.name = "V1[length3]",
                   .coords = {"g1", "g2", "u0", "v0", "v1"},
                   .units = {"g1", "g2"},
                   .roots = {{"v0", "p-1", "g1"}, {"v1", "p-1", "g2"}},
                   .p_equation = "u0^(p-1)",
                   .monomial = {{"u0", 1}},
                   .source = "common shape of the length-3 opens: two roots of units and a root of p",
                   .reduction = "g1, g2 stand for the two nonzero OT parameters"});
  specs.push_back({.name = "V1[s01]",
                   .coords = {"y", "a", "u0", "u1", "v1"},
                   .units = {"y", "a"},
                   .roots = {{"u0", "p-1", "y"}},
                   .p_equation = "(u1*v1)^(p-1)",
                   .monomial = {{"u1", 1}, {"v1", 1}},
                   .source = "pro-p preimage of the open where y and a are units"});
  specs.push_back({.name = "V1[length2]",
                   .coords = {"g", "u0", "u1", "v1"},
                   .units = {"g"},
                   .roots = {{"u0", "p-1", "g"}},
                   .p_equation = "(u1*v1)^(p-1)",
                   .monomial = {{"u1", 1}, {"v1", 1}},
                   .source = "common shape of the length-2 opens other than s02",
                   .reduction = "g stands for the nonzero OT parameter"});
  specs.push_back({.name = "s02-cover",
                   .coords = {"a", "b", "x", "c", "u0", "v0", "t"},
                   .units = {"a", "b"},
                   .roots = {{"u0", "p-1", "c"}, {"v0", "p-1", "x"}, {"t", "p-1", "a/b"}},
                   .p_equation = "x*c",
                   .monomial = {{"u0", 1}, {"v0", 1}},
                   .source = "finite cover of the pro-p open over s02 with u1 = v0*t, v1 = u0/t"});
  specs.push_back({.name = "s0s2-cover",
                   .coords = {"x", "a", "b", "c", "r", "s", "t"},
                   .units = {"b"},
                   .roots = {{"r", "p-1", "a"}, {"s", "p-1", "x"}, {"t", "p-1", "c"}},
                   .p_equation = "a*x*c",
                   .monomial = {{"r", 1}, {"s", 1}, {"t", 1}},
                   .source = "finite cover of the pro-p open over s2 (and its mirror s0) with u0, u1, v0, v1 = "
                             "r*t, r*s, s, t"});

  std::vector<Chart> out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back(make_chart(s));
  return out;
}

const Chart* find_chart(const std::vector<Chart>& charts, const std::string& name) {
  for (const auto& c : charts)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

std::string format_assignment(const FieldCtx& ctx, const Chart& ch, const FieldEnv& env) {
  std::string s = "{";
  for (std::size_t i = 0; i < ch.coords.size(); ++i) {
    if (i) s += ", ";
    s += ch.coords[i] + "=" + ctx.format(env.at(ch.coords[i]));
  }
  return s + "}";
}

// Checks one tuple. Returns false if the tuple is not a chart point; sets
// `failure` if it is a chart point that violates a property.
bool check_tuple(const FieldCtx& ctx, const Chart& ch, const FieldEnv& env, const IntEnv& ints, Int mono_exp,
                 ChartValidation& rep, std::string& failure) {
  for (const auto& u : ch.units) {
    auto v = u.eval(ctx, env, ints);
    if (!v || ctx.is_zero(*v)) return false;
  }
  for (const auto& r : ch.roots) {
    auto v = r.value.eval(ctx, env, ints);
    if (!v) return false;
    if (ctx.pow(env.at(r.coord), static_cast<std::int64_t>(r.exponent.eval(ints))) != *v) return false;
  }
  for (const auto& rel : ch.relations) {
    auto v = rel.eval(ctx, env, ints);
    if (!v || !ctx.is_zero(*v)) return false;
  }
  ++rep.chart_points;

  const auto M = ch.p_equation.eval(ctx, env, ints);
  const auto U = ch.unit_factor.eval(ctx, env, ints);
  if (!M) {
    failure = "p-equation undefined";
    return true;
  }
  if (!U || ctx.is_zero(*U)) {
    failure = "unit factor " + ch.unit_factor.text() + " is not a unit";
    return true;
  }
  FqElement P = ctx.one();
  bool some_zero = false;
  for (const auto& m : ch.monomial) {
    const FqElement c = env.at(m.coord);
    some_zero = some_zero || ctx.is_zero(c);
    P = ctx.mul(P, ctx.pow(c, static_cast<std::int64_t>(m.multiplicity * mono_exp)));
  }
  if (*M != ctx.mul(*U, P)) {
    failure = "p-equation differs from unit times monomial";
    return true;
  }
  if (ctx.is_zero(*M)) ++rep.special_fiber_points;
  if (ctx.is_zero(*M) != some_zero) {
    failure = ctx.is_zero(*M) ? "special-fiber point with no vanishing monomial coordinate"
                              : "monomial coordinate vanishes off the special fiber";
    return true;
  }

  if (!ch.base_map.empty()) {
    FieldEnv base;
    for (const auto& b : ch.base_map) {
      auto v = b.value.eval(ctx, env, ints);
      if (!v) {
        failure = "base map for " + b.base + " undefined";
        rep.base_map_ok = false;
        return true;
      }
      base[b.base] = *v;
    }
    const FqElement xy = ctx.mul(base["x"], base["y"]);
    const FqElement rel = ctx.add(ctx.add(ctx.mul(base["a"], base["x"]), ctx.mul(base["b"], base["y"])),
                                  ctx.mul(ctx.mul(base["a"], base["b"]), base["c"]));
    if (xy != *M || !ctx.is_zero(rel)) {
      failure = xy != *M ? "base image has xy != p-equation" : "base image violates ax+by+abc = 0";
      rep.base_map_ok = false;
      return true;
    }
  }
  return true;
}

}  // namespace

ChartValidation validate_chart(const Chart& chart, const FieldCtx& ctx, const ValidationOptions& opts) {
  ChartValidation rep;
  rep.chart = chart.name;
  const IntEnv ints{{"p", static_cast<Int>(ctx.p())}};
  const Int mono_exp = chart.monomial_exponent.eval(ints);

  rep.tame = true;
  for (const auto& m : chart.monomial) {
    const Int d = checked_mul(m.multiplicity, mono_exp);
    if (d % static_cast<Int>(ctx.p()) == 0) {
      rep.tame = false;
      rep.tameness_detail = "multiplicity " + std::to_string(d) + " of " + m.coord + " is divisible by p";
      rep.failure = rep.tameness_detail;
      break;
    }
  }

  const std::size_t n = chart.coords.size();
  std::uint64_t total = 1;
  bool overflow = false;
  for (std::size_t i = 0; i < n && !overflow; ++i) {
    if (total > opts.exhaustive_budget / ctx.q() + 1) overflow = true;
    total *= ctx.q();
  }
  rep.exhaustive = !overflow && total <= opts.exhaustive_budget;

  FieldEnv env;
  std::vector<std::uint64_t> idx(n, 0);
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, ctx.q() - 1);
  const std::uint64_t steps = rep.exhaustive ? total : opts.samples;

  rep.vanishing = true;
  for (std::uint64_t step = 0; step < steps; ++step) {
    if (rep.exhaustive) {
      std::uint64_t rem = step;
      for (std::size_t i = n; i-- > 0;) {
        idx[i] = rem % ctx.q();
        rem /= ctx.q();
      }
    } else {
      for (auto& v : idx) v = pick(rng);
    }
    for (std::size_t i = 0; i < n; ++i) env[chart.coords[i]] = ctx.element(idx[i]);
    ++rep.tuples_scanned;
    std::string failure;
    check_tuple(ctx, chart, env, ints, mono_exp, rep, failure);
    if (!failure.empty()) {
      if (rep.base_map_ok) rep.vanishing = false;
      rep.witness = format_assignment(ctx, chart, env);
      if (rep.failure.empty()) rep.failure = failure;
      break;
    }
  }
  return rep;
}

std::string describe(const Chart& ch) {
  std::ostringstream os;
  os << ch.name << "  coords(";
  for (std::size_t i = 0; i < ch.coords.size(); ++i) os << (i ? "," : "") << ch.coords[i];
  os << ")  p = " << ch.p_equation.text() << "  monomial ";
  for (std::size_t i = 0; i < ch.monomial.size(); ++i) {
    os << (i ? "*" : "") << ch.monomial[i].coord;
    if (ch.monomial[i].multiplicity != 1) os << "^" << ch.monomial[i].multiplicity;
  }
  os << " ^(" << ch.monomial_exponent.text() << ")";
  for (const auto& r : ch.roots) os << "  " << r.coord << "^(" << r.exponent.text() << ")=" << r.value.text();
  for (const auto& u : ch.units) os << "  unit " << u.text();
  return os.str();
}

}  // namespace frobtrace
