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

// Pointwise check of trace = Phi(s_x, w) over the whole special fiber, the
// stratum census, and the identity suite.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "frobtrace/checked.hpp"
#include "frobtrace/gf.hpp"
#include "frobtrace/hecke.hpp"
#include "frobtrace/localmodel.hpp"
#include "frobtrace/nearby.hpp"
#include "frobtrace/weyl.hpp"

namespace frobtrace {

inline constexpr std::uint64_t kDefaultLimit = 100'000'000;

using PhiFunction = std::function<Int(const FieldCtx&, const TorusElement&, AdmLabel)>;

struct VerifyOptions {
  std::uint64_t limit = kDefaultLimit;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
  /// Replaces phi_scaled; used for fault injection.
  PhiFunction phi;
};

struct Witness {
  ModelPoint point;
  Int trace = 0;
  Int phi = 0;
  TorusElement s;
  TraceReport detail;
};

struct StratumStats {
  AdmLabel label = AdmLabel::tau;
  std::uint64_t count = 0;
  std::uint64_t pass = 0;
  std::uint64_t fail = 0;
  std::optional<Witness> witness;
};

struct VerificationReport {
  std::uint32_t p = 0;
  int r = 0;
  std::uint64_t q = 0;
  std::array<StratumStats, kAdmissibleCount> strata{};
  std::uint64_t total = 0;
  bool pass = false;
  std::int64_t elapsed_us = 0;

  /// First failure in (x, y, a, b, c) index order, over all strata.
  const Witness* first_witness() const;
};

/// Throws LimitError if q^5 exceeds the limit.
VerificationReport verify_theorem(const FieldCtx& ctx, const VerifyOptions& opts = {});

/// Points per stratum, ordered as AdmLabel.
std::array<std::uint64_t, kAdmissibleCount> stratum_census(const FieldCtx& ctx, std::uint64_t limit = kDefaultLimit,
                                                           unsigned workers = 0);

struct IdentityCheck {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::optional<std::string> witness{};
};

struct IdentityReport {
  std::uint64_t points = 0;
  IdentityCheck similitude{"similitude"};
  IdentityCheck zero_pattern{"zero-pattern"};
  IdentityCheck layer_vanishing{"layer-vanishing"};
  IdentityCheck containment{"containment"};
  bool pass() const;
};

struct IdentityOptions {
  std::uint64_t limit = kDefaultLimit;
  Classifier classifier = classify_by_minors;
  /// All (alpha, delta) pairs when q^2 is at most this, else this many samples.
  std::uint64_t layer_pairs = 100;
  std::uint64_t seed = 0x1a7e5ULL;
};

IdentityReport check_identities(const FieldCtx& ctx, const IdentityOptions& opts = {});

unsigned resolve_workers(unsigned requested);

}  // namespace frobtrace
