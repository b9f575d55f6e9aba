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

// Semistable trace of Frobenius on the pushforward of nearby cycles at a
// special-fiber point of U.
//
// A FiberRecipe lists segments. Each segment loops over auxiliary variables,
// names a chart, and assigns the chart's non-root coordinates at the fiber
// point as expressions in the base point and the loop variables. The engine
// solves the chart's root relations over F_q, checks that the resulting
// points lie on the chart's special fiber, counts the vanishing monomial
// coordinates (the branches), and adds points * (1-q)^(branches-1).

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "frobtrace/charts.hpp"
#include "frobtrace/checked.hpp"
#include "frobtrace/expr.hpp"
#include "frobtrace/gf.hpp"
#include "frobtrace/localmodel.hpp"
#include "frobtrace/weyl.hpp"

namespace frobtrace {

/// Largest q for which every trace and test-function value fits in Int.
inline constexpr std::uint64_t kMaxTraceQ = 1u << 20;

/// (1-q)^(branches-1). Throws std::invalid_argument if branches < 1.
Int local_trace(int branches, std::uint64_t q);

struct Loop {
  enum class Domain {
    kField,           // F_q
    kUnits,           // F_q^x
    kProjectiveLine,  // F_q, then the point at infinity read as 0
    kRange,           // integers lo..hi inclusive, bound as an integer variable
  };
  std::string var;
  Domain domain = Domain::kField;
  IntExpr lo, hi;
};

struct Segment {
  std::string description;
  std::vector<Loop> loops;
  std::string chart;  // may contain {int-expr} placeholders, e.g. "R{j-1}"
  std::vector<std::pair<std::string, Expr>> assign;
  /// Innermost loop variable whose sum must vanish for every outer assignment.
  std::string zero_sum_over;
};

struct FiberRecipe {
  AdmLabel stratum;
  std::vector<Segment> segments;
};

/// Recipes for all 13 strata, ordered as AdmLabel.
std::vector<FiberRecipe> recipes();

struct FiberRow {
  std::string segment;
  std::string chart;
  std::uint64_t points = 0;
  int branches = 0;
  Int contribution = 0;
  friend bool operator==(const FiberRow&, const FiberRow&) = default;
};

struct TraceReport {
  ModelPoint point;
  AdmLabel stratum;
  Int trace = 0;
  std::vector<FiberRow> fiber_detail;
};

/// Atlas and recipes for one field, shareable across threads.
class NearbyEngine {
 public:
  /// Throws OverflowError if q exceeds kMaxTraceQ.
  explicit NearbyEngine(const FieldCtx& ctx);

  const FieldCtx& field() const { return ctx_; }
  const std::vector<Chart>& charts() const { return charts_; }
  const std::vector<FiberRecipe>& recipe_list() const { return recipes_; }

  TraceReport trace_at(const ModelPoint& P) const;
  TraceReport trace_at(const ModelPoint& P, AdmLabel w) const;

  /// Evaluates one segment with some loop variables already bound in `env`
  /// (those loops are skipped). Rows are appended to `rows`.
  Int evaluate_segment(const Segment& seg, const FieldEnv& env, std::vector<FiberRow>* rows) const;

  /// T(alpha, delta): the tower segments of the worst-point recipe with alpha
  /// and delta fixed.
  Int tower_trace_E0(const FqElement& alpha, const FqElement& delta) const;

  /// Sum over beta in F_q of the R_{j-1} layer at (alpha, delta), as a literal
  /// sum (no zero-sum assertion).
  Int layer_sum(Int j, const FqElement& alpha, const FqElement& delta) const;

  /// Sum over the (1:lambda) segment at c = gamma.
  Int s1_lambda_sum(const FqElement& gamma) const;

  /// Sum of T over P^1(F_q) x P^1(F_q) with infinity read as 0.
  Int tower_sum() const;

  /// Every chart named by a recipe (all j expanded) exists and every assigned
  /// or zero-sum name is consistent. Returns the problems found.
  std::vector<std::string> closure_problems() const;

 private:
  const Segment& find_segment(AdmLabel w, const std::string& description) const;

  FieldCtx ctx_;
  std::vector<Chart> charts_;
  std::vector<FiberRecipe> recipes_;
};

FieldEnv base_env(const FieldCtx& ctx, const ModelPoint& P);

TraceReport trace_at(const FieldCtx& ctx, const ModelPoint& P);

}  // namespace frobtrace
