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

// Points of the special fiber of the Iwahori local model
//   U = Spec Z_p[x, y, a, b, c] / (xy - p, ax + by + abc),
// the lattice chain F_0, F_1, F_2 at a point, and the minor rule that sorts
// points into the 13 Kottwitz-Rapoport strata.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "frobtrace/gf.hpp"
#include "frobtrace/weyl.hpp"

namespace frobtrace {

struct ModelPoint {
  FqElement x, y, a, b, c;
  friend bool operator==(const ModelPoint&, const ModelPoint&) = default;
  friend auto operator<=>(const ModelPoint&, const ModelPoint&) = default;
};

/// xy = 0 and ax + by + abc = 0.
bool on_special_fiber(const FieldCtx& ctx, const ModelPoint& P);

/// Oort-Tate parameters in the order (b0, b1, a1, a0) = (x, x+bc, y+ac, y).
struct OTQuadruple {
  FqElement b0, b1, a1, a0;
  std::array<FqElement, 4> as_array() const { return {b0, b1, a1, a0}; }
  friend bool operator==(const OTQuadruple&, const OTQuadruple&) = default;
};

OTQuadruple ot_params(const FieldCtx& ctx, const ModelPoint& P);

/// Nonzero slots of the OT quadruple on a stratum, in (b0, b1, a1, a0) order.
std::array<bool, 4> ot_nonzero_pattern(AdmLabel w);
std::array<bool, 4> ot_nonzero_pattern(const FieldCtx& ctx, const OTQuadruple& ot);

using Mat42 = std::array<std::array<FqElement, 2>, 4>;

struct MatrixChain {
  std::array<Mat42, 3> F;
};

/// F0 = [[1,0],[0,1],[x,b],[-xc,x]]
/// F1 = [[-by,y],[1,0],[0,1],[x+bc,-c]]
/// F2 = [[y+ac,a],[c(y+ac),y+ac],[1,0],[0,1]]
MatrixChain matrix_chain(const FieldCtx& ctx, const ModelPoint& P);

/// phi_0(F_0) in F_1 and phi_1(F_1) in F_2, where phi_i scales row i by
/// the uniformizer. On the special fiber pass zero; with xy = uniformizer the
/// same containments must hold on the generic fiber.
bool containments_hold(const FieldCtx& ctx, const MatrixChain& chain, const FqElement& uniformizer);

/// Determinant of the 2x2 submatrix of F_i on the rows where t_i has a 1.
FqElement minor(const FieldCtx& ctx, const MatrixChain& chain, int i, const BitVec4& rows);

/// W(P): the admissible elements whose three minors are all invertible.
std::vector<AdmLabel> minor_candidates(const FieldCtx& ctx, const ModelPoint& P);

/// The unique maximal-length element of W(P). Throws InvariantError if W(P)
/// is empty or the maximum is not unique.
AdmLabel classify_by_minors(const FieldCtx& ctx, const ModelPoint& P);

/// classify_by_minors, then throws InvariantError if the OT zero pattern of P
/// disagrees with the pattern of the result.
AdmLabel classify(const FieldCtx& ctx, const ModelPoint& P);

using Classifier = std::function<AdmLabel(const FieldCtx&, const ModelPoint&)>;

/// q^5 as a nominal tuple count, saturating at UINT64_MAX.
std::uint64_t special_fiber_tuple_bound(const FieldCtx& ctx);

/// Throws LimitError if q^5 exceeds limit.
void check_enumeration_limit(const FieldCtx& ctx, std::uint64_t limit);

/// The pairs (x, y) with xy = 0, in index order.
std::vector<std::pair<FqElement, FqElement>> special_fiber_xy(const FieldCtx& ctx);

/// Visits the points above a fixed (x, y) in (a, b, c) index order.
void for_each_point_over(const FieldCtx& ctx, const FqElement& x, const FqElement& y,
                         const std::function<void(const ModelPoint&)>& visit);

/// All special-fiber points in (x, y, a, b, c) index order.
std::vector<ModelPoint> enumerate_special_fiber(const FieldCtx& ctx, std::uint64_t limit);

/// q^2(3q - 2) + (q - 1)^3.
std::uint64_t special_fiber_count(std::uint64_t q);

std::string format_point(const FieldCtx& ctx, const ModelPoint& P);

}  // namespace frobtrace
