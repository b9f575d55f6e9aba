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

// Torus side of the comparison: the subgroups A_w of T(F_p), the element s_x
// attached to a point, and Phi(s, w) = (q-1)^3 * phi'(s w) as an exact
// integer.

#include <array>
#include <optional>
#include <string>

#include "frobtrace/checked.hpp"
#include "frobtrace/gf.hpp"
#include "frobtrace/localmodel.hpp"
#include "frobtrace/weyl.hpp"

namespace frobtrace {

/// diag(h0, h1, k1, k0); components are expected nonzero.
struct TorusElement {
  std::array<FqElement, 4> g{};
  friend bool operator==(const TorusElement&, const TorusElement&) = default;
};

/// g0 * g3 == g1 * g2. Tracked, not enforced.
bool satisfies_similitude(const FieldCtx& ctx, const TorusElement& s);

/// Componentwise norm to F_p.
TorusElement norm(const FieldCtx& ctx, const TorusElement& s);

/// Membership of a prime-field 4-tuple in A_w. For s02 the test is g0 == g1.
bool in_A(const FieldCtx& ctx, AdmLabel w, const TorusElement& g);

/// Human-readable predicate, e.g. "g2=g3=1, g0=g1".
std::string subgroup_predicate(AdmLabel w);

/// OT parameters with zeros replaced by 1, except (a, b, a, b) on s02.
TorusElement s_x(const FieldCtx& ctx, const ModelPoint& P, AdmLabel w);

/// Norms of the nonzero OT parameters; zero slots are empty.
std::array<std::optional<FqElement>, 4> t_x(const FieldCtx& ctx, const ModelPoint& P);

/// Rational value of phi'(s w) as numerator / denominator, before scaling.
struct Rational {
  Int num = 0;
  Int den = 1;
};
Rational phi_prime(const FieldCtx& ctx, const TorusElement& s, AdmLabel w);

/// (q-1)^3 * phi'(s w). Throws OverflowError if q exceeds kMaxTraceQ and
/// InvariantError if the scaled value is not an integer.
Int phi_scaled(const FieldCtx& ctx, const TorusElement& s, AdmLabel w);

}  // namespace frobtrace
