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

#include "frobtrace/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "frobtrace/error.hpp"

namespace frobtrace {

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs fn(i) for i in [0, n) on up to `workers` threads. The first exception
// thrown by any task is rethrown on the caller's thread.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  const unsigned k = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = n;
        return;
      }
    }
  };
  if (k <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(k);
    for (unsigned t = 0; t < k; ++t) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

const Witness* VerificationReport::first_witness() const {
  const Witness* best = nullptr;
  for (const auto& s : strata)
    if (s.witness && (!best || s.witness->point < best->point)) best = &*s.witness;
  return best;
}

VerificationReport verify_theorem(const FieldCtx& ctx, const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  check_enumeration_limit(ctx, opts.limit);
  const NearbyEngine engine(ctx);
  const PhiFunction phi = opts.phi ? opts.phi : PhiFunction(phi_scaled);
  const auto pairs = special_fiber_xy(ctx);

  std::vector<std::array<StratumStats, kAdmissibleCount>> partial(pairs.size());
  parallel_for(pairs.size(), opts.workers, [&](std::size_t i) {
    auto& out = partial[i];
    for_each_point_over(ctx, pairs[i].first, pairs[i].second, [&](const ModelPoint& P) {
      const AdmLabel w = classify(ctx, P);
      const TraceReport tr = engine.trace_at(P, w);
      const TorusElement s = s_x(ctx, P, w);
      const Int rhs = phi(ctx, s, w);
      auto& st = out[static_cast<std::size_t>(w)];
      ++st.count;
      if (tr.trace == rhs) {
        ++st.pass;
      } else {
        ++st.fail;
        if (!st.witness) st.witness = Witness{P, tr.trace, rhs, s, tr};
      }
    });
  });

  VerificationReport rep;
  rep.p = ctx.p();
  rep.r = ctx.r();
  rep.q = ctx.q();
  for (std::size_t k = 0; k < kAdmissibleCount; ++k) rep.strata[k].label = static_cast<AdmLabel>(k);
  // Pairs are merged in index order, so the first witness kept per stratum is
  // the smallest failing point.
  for (const auto& part : partial) {
    for (std::size_t k = 0; k < kAdmissibleCount; ++k) {
      auto& dst = rep.strata[k];
      const auto& src = part[k];
      dst.count += src.count;
      dst.pass += src.pass;
      dst.fail += src.fail;
      if (!dst.witness && src.witness) dst.witness = src.witness;
    }
  }
  std::uint64_t failures = 0;
  for (const auto& s : rep.strata) {
    rep.total += s.count;
    failures += s.fail;
  }
  rep.pass = failures == 0;
  rep.elapsed_us =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::array<std::uint64_t, kAdmissibleCount> stratum_census(const FieldCtx& ctx, std::uint64_t limit,
                                                           unsigned workers) {
  check_enumeration_limit(ctx, limit);
  const auto pairs = special_fiber_xy(ctx);
  std::vector<std::array<std::uint64_t, kAdmissibleCount>> partial(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t i) {
    auto& out = partial[i];
    out.fill(0);
    for_each_point_over(ctx, pairs[i].first, pairs[i].second,
                        [&](const ModelPoint& P) { ++out[static_cast<std::size_t>(classify(ctx, P))]; });
  });
  std::array<std::uint64_t, kAdmissibleCount> total{};
  for (const auto& part : partial)
    for (std::size_t k = 0; k < kAdmissibleCount; ++k) total[k] += part[k];
  return total;
}

bool IdentityReport::pass() const {
  return similitude.failed == 0 && zero_pattern.failed == 0 && layer_vanishing.failed == 0 && containment.failed == 0;
}

namespace {

void record(IdentityCheck& c, bool ok, const std::function<std::string()>& describe) {
  ++c.checked;
  if (ok) return;
  ++c.failed;
  if (!c.witness) c.witness = describe();
}

}  // namespace

IdentityReport check_identities(const FieldCtx& ctx, const IdentityOptions& opts) {
  IdentityReport rep;
  const auto points = enumerate_special_fiber(ctx, opts.limit);
  const FqElement zero = ctx.zero();
  for (const auto& P : points) {
    ++rep.points;
    const OTQuadruple ot = ot_params(ctx, P);
    const FqElement lhs = ctx.mul(ot.b0, ot.a0);
    const FqElement rhs = ctx.mul(ot.b1, ot.a1);
    record(rep.similitude, lhs == rhs && ctx.is_zero(lhs), [&] { return format_point(ctx, P); });

    const AdmLabel w = opts.classifier(ctx, P);
    record(rep.zero_pattern, ot_nonzero_pattern(ctx, ot) == ot_nonzero_pattern(w),
           [&] { return format_point(ctx, P) + " classified " + std::string(adm(w).ascii); });

    record(rep.containment, containments_hold(ctx, matrix_chain(ctx, P), zero),
           [&] { return format_point(ctx, P); });
  }

  const NearbyEngine engine(ctx);
  std::vector<std::pair<FqElement, FqElement>> pairs;
  const auto all = ctx.enumerate();
  if (ctx.q() * ctx.q() <= opts.layer_pairs) {
    for (const auto& a : all)
      for (const auto& d : all) pairs.emplace_back(a, d);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, ctx.q() - 1);
    for (std::uint64_t i = 0; i < opts.layer_pairs; ++i) pairs.emplace_back(all[pick(rng)], all[pick(rng)]);
  }
  for (const auto& [a, d] : pairs) {
    for (Int j = 1; j <= static_cast<Int>(ctx.p()) - 2; ++j) {
      const Int sum = engine.layer_sum(j, a, d);
      record(rep.layer_vanishing, sum == 0, [&] {
        return "alpha=" + ctx.format(a) + " delta=" + ctx.format(d) + " j=" + std::to_string(j) +
               " sum=" + std::to_string(sum);
      });
    }
  }
  return rep;
}

}  // namespace frobtrace
