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

// Resolution charts as data. A chart is an affine patch with coordinates,
// unit conditions, root relations coord^e = value, extra relations, and an
// expression M equal to p in the chart ring. The uniformizer monomial
// P = prod coord^(mult * exp) and a unit U satisfy M = U * P, so the special
// fiber of the chart is the union of the coordinate hyperplanes in P.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobtrace/expr.hpp"
#include "frobtrace/gf.hpp"

namespace frobtrace {

struct RootRelation {
  std::string coord;
  IntExpr exponent;
  Expr value;
};

struct MonomialFactor {
  std::string coord;
  int multiplicity;
};

struct BaseMapEntry {
  std::string base;  // one of x, y, a, b, c
  Expr value;
};

struct Chart {
  std::string name;
  std::vector<std::string> coords;
  std::vector<Expr> units;
  std::vector<RootRelation> roots;
  std::vector<Expr> relations;
  Expr p_equation;
  std::vector<MonomialFactor> monomial;
  IntExpr monomial_exponent;
  Expr unit_factor;
  /// Images of the base coordinates of U, when the chart maps to U directly.
  std::vector<BaseMapEntry> base_map;
  std::string source;
  std::string reduction;

  bool has_coord(const std::string& c) const;
  bool in_monomial(const std::string& c) const;
  const RootRelation* root_for(const std::string& c) const;
};

/// Plain-string form used to declare charts; parsed and shape-checked by
/// make_chart.
struct ChartSpec {
  std::string name{};
  std::vector<std::string> coords{};
  std::vector<std::string> units{};
  std::vector<std::array<std::string, 3>> roots{};  // coord, exponent, value
  std::vector<std::string> relations{};
  std::string p_equation{};
  std::vector<std::pair<std::string, int>> monomial{};
  std::string monomial_exponent = "p-1";
  std::string unit_factor = "1";
  std::vector<std::pair<std::string, std::string>> base_map{};
  std::string source{};
  std::string reduction{};
};

/// Parses and checks that every referenced name is a coordinate, coordinates
/// are distinct, and the monomial is a nonempty product of coordinates.
/// Throws ConstructionError otherwise.
Chart make_chart(const ChartSpec& spec);

/// The atlas for characteristic p: the blow-up charts of U, the pro-p charts,
/// the tower E_0..E_{p-2}, R_0..R_{p-3}, and the per-stratum covers.
std::vector<Chart> atlas(std::uint32_t p);

const Chart* find_chart(const std::vector<Chart>& charts, const std::string& name);

struct ChartValidation {
  std::string chart;
  bool tame = false;
  std::string tameness_detail;
  bool vanishing = false;
  bool base_map_ok = true;
  bool exhaustive = false;
  std::uint64_t tuples_scanned = 0;
  std::uint64_t chart_points = 0;
  std::uint64_t special_fiber_points = 0;
  std::optional<std::string> witness;
  std::string failure;

  bool passed() const { return tame && vanishing && base_map_ok; }
};

struct ValidationOptions {
  std::uint64_t exhaustive_budget = 2'000'000;
  std::uint64_t samples = 200'000;
  std::uint64_t seed = 0x5eedf00dULL;
};

/// Tameness (mult * exp prime to p) and, over every chart point in F_q,
/// M == U * P with U a unit, M = 0 exactly when some monomial coordinate
/// vanishes, and the base map lands on U with xy = M.
ChartValidation validate_chart(const Chart& chart, const FieldCtx& ctx, const ValidationOptions& opts = {});

std::string describe(const Chart& chart);

}  // namespace frobtrace
