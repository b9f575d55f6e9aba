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

#include <set>

#include "frobtrace/charts.hpp"
#include "frobtrace/error.hpp"

namespace frobtrace {
namespace {

std::vector<std::pair<std::string, int>> monomial_of(const Chart& c) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& m : c.monomial) out.emplace_back(m.coord, m.multiplicity);
  return out;
}

TEST(Atlas, NamesAreUniqueAndComplete) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    auto charts = atlas(p);
    std::set<std::string> names;
    for (const auto& c : charts) EXPECT_TRUE(names.insert(c.name).second) << c.name;
    for (std::uint32_t i = 0; i + 2 <= p; ++i) EXPECT_TRUE(names.count("E" + std::to_string(i))) << p << " E" << i;
    for (std::uint32_t i = 0; i + 3 <= p; ++i) EXPECT_TRUE(names.count("R" + std::to_string(i))) << p << " R" << i;
    EXPECT_FALSE(names.count("R" + std::to_string(p - 2)));
    for (const char* n : {"s02-cover", "s0s2-cover", "V1[s010]", "V1[s01]", "cover(bt)", "cover(1+bt*c)"})
      EXPECT_TRUE(names.count(n)) << n;
  }
}

TEST(Atlas, E0Monomial) {
  auto charts = atlas(3);
  const Chart* e0 = find_chart(charts, "E0");
  ASSERT_NE(e0, nullptr);
  EXPECT_EQ(monomial_of(*e0), (std::vector<std::pair<std::string, int>>{{"r", 2}, {"s", 1}, {"t", 1}}));
  EXPECT_EQ(e0->monomial_exponent.eval({{"p", 3}}), 2);
}

TEST(Atlas, CoverRootRelations) {
  auto charts = atlas(5);
  const Chart* s02 = find_chart(charts, "s02-cover");
  ASSERT_NE(s02, nullptr);
  const RootRelation* t = s02->root_for("t");
  ASSERT_NE(t, nullptr);
  EXPECT_EQ(t->value.text(), "a/b");
  EXPECT_EQ(t->exponent.eval({{"p", 5}}), 4);

  const Chart* s0s2 = find_chart(charts, "s0s2-cover");
  ASSERT_NE(s0s2, nullptr);
  EXPECT_EQ(s0s2->root_for("r")->value.text(), "a");
  EXPECT_EQ(s0s2->root_for("s")->value.text(), "x");
  EXPECT_EQ(s0s2->root_for("t")->value.text(), "c");
  EXPECT_EQ(s0s2->p_equation.text(), "a*x*c");
}

TEST(Validate, EveryChartAtF3) {
  auto ctx = FieldCtx::make(3, 1);
  for (const auto& c : atlas(3)) {
    auto v = validate_chart(c, ctx);
    EXPECT_TRUE(v.passed()) << c.name << ": " << v.failure << " " << v.witness.value_or("");
    EXPECT_TRUE(v.exhaustive) << c.name;
    EXPECT_GT(v.chart_points, 0u) << c.name;
    EXPECT_GT(v.special_fiber_points, 0u) << c.name;
  }
}

TEST(Validate, EveryChartAtF5) {
  auto ctx = FieldCtx::make(5, 1);
  for (const auto& c : atlas(5)) {
    auto v = validate_chart(c, ctx);
    EXPECT_TRUE(v.passed()) << c.name << ": " << v.failure << " " << v.witness.value_or("");
  }
}

TEST(Validate, SampledAtF9) {
  auto ctx = FieldCtx::make(3, 2);
  ValidationOptions opts;
  opts.exhaustive_budget = 10'000;
  opts.samples = 20'000;
  for (const auto& c : atlas(3)) {
    auto v = validate_chart(c, ctx, opts);
    EXPECT_TRUE(v.passed()) << c.name << ": " << v.failure;
    if (c.coords.size() >= 5) EXPECT_FALSE(v.exhaustive) << c.name;
  }
}

ChartSpec e0_spec() {
  return {.name = "E0*",
          .coords = {"r", "s", "t", "e", "f"},
          .relations = {"r^2-e*f"},
          .p_equation = "(r^2*s*t)^(p-1)",
          .monomial = {{"r", 2}, {"s", 1}, {"t", 1}}};
}

TEST(Validate, FaultMultiplicityP) {
  auto spec = e0_spec();
  spec.p_equation = "(r^3*s*t)^(p-1)";
  spec.monomial = {{"r", 3}, {"s", 1}, {"t", 1}};
  auto v = validate_chart(make_chart(spec), FieldCtx::make(3, 1));
  EXPECT_FALSE(v.tame);
  EXPECT_FALSE(v.passed());
  EXPECT_NE(v.tameness_detail.find("divisible by p"), std::string::npos);
}

TEST(Validate, FaultDroppedMonomialCoordinate) {
  auto spec = e0_spec();
  spec.monomial = {{"r", 2}, {"s", 1}};
  auto v = validate_chart(make_chart(spec), FieldCtx::make(3, 1));
  EXPECT_TRUE(v.tame);
  EXPECT_FALSE(v.vanishing);
  EXPECT_FALSE(v.passed());
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_NE(v.witness->find("t=0"), std::string::npos) << *v.witness;
}

TEST(Validate, FaultBrokenBaseMap) {
  ChartSpec spec{.name = "bad",
                 .coords = {"x", "y", "a", "bt", "c"},
                 .relations = {"a+bt*y+a*bt*c"},
                 .p_equation = "x*y",
                 .monomial = {{"x", 1}, {"y", 1}},
                 .monomial_exponent = "1",
                 .base_map = {{"x", "x"}, {"y", "y"}, {"a", "a"}, {"b", "bt"}, {"c", "c"}}};
  auto v = validate_chart(make_chart(spec), FieldCtx::make(3, 1));
  EXPECT_FALSE(v.base_map_ok);
  EXPECT_FALSE(v.passed());
  EXPECT_TRUE(v.witness.has_value());
}

TEST(MakeChart, ShapeErrors) {
  auto spec = e0_spec();
  spec.coords = {"r", "s", "t", "e", "e"};
  EXPECT_THROW(make_chart(spec), ConstructionError);

  spec = e0_spec();
  spec.monomial = {};
  EXPECT_THROW(make_chart(spec), ConstructionError);

  spec = e0_spec();
  spec.monomial = {{"z", 1}};
  EXPECT_THROW(make_chart(spec), ConstructionError);

  spec = e0_spec();
  spec.units = {"q+1"};
  EXPECT_THROW(make_chart(spec), ConstructionError);

  spec = e0_spec();
  spec.roots = {{"r", "p-1", "s"}, {"r", "p-1", "t"}};
  EXPECT_THROW(make_chart(spec), ConstructionError);

  spec = e0_spec();
  spec.base_map = {{"x", "r"}};
  EXPECT_THROW(make_chart(spec), ConstructionError);
}

TEST(Describe, MentionsNameAndMonomial) {
  auto charts = atlas(3);
  auto d = describe(*find_chart(charts, "E0"));
  EXPECT_NE(d.find("E0"), std::string::npos);
  EXPECT_NE(d.find("r^2*s*t"), std::string::npos);
}

}  // namespace
}  // namespace frobtrace
