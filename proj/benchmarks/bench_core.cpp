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


#include <benchmark/benchmark.h>

#include "frobtrace/charts.hpp"
#include "frobtrace/nearby.hpp"
#include "frobtrace/verify.hpp"

namespace frobtrace {
namespace {

void BM_FieldMul(benchmark::State& state) {
  const auto ctx = FieldCtx::make(state.range(0), state.range(1));
  const auto els = ctx.enumerate();
  std::size_t i = 0;
  FqElement acc = ctx.one();
  for (auto _ : state) {
    acc = ctx.mul(acc, els[1 + i % (els.size() - 1)]);
    benchmark::DoNotOptimize(acc);
    ++i;
  }
}
BENCHMARK(BM_FieldMul)->Args({3, 1})->Args({3, 4})->Args({32749, 1})->Args({101, 3});

void BM_FieldInv(benchmark::State& state) {
  const auto ctx = FieldCtx::make(state.range(0), state.range(1));
  const auto g = ctx.generator();
  for (auto _ : state) benchmark::DoNotOptimize(ctx.inv(g));
}
BENCHMARK(BM_FieldInv)->Args({3, 1})->Args({5, 2})->Args({101, 3});

void BM_Classify(benchmark::State& state) {
  const auto ctx = FieldCtx::make(5, 2);
  const auto pts = enumerate_special_fiber(ctx, kDefaultLimit);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(ctx, pts[i % pts.size()]));
    ++i;
  }
}
BENCHMARK(BM_Classify);

void BM_WorstPointTrace(benchmark::State& state) {
  const auto ctx = FieldCtx::make(state.range(0), state.range(1));
  const NearbyEngine eng(ctx);
  for (auto _ : state) benchmark::DoNotOptimize(eng.trace_at(ModelPoint{}, AdmLabel::tau).trace);
}
BENCHMARK(BM_WorstPointTrace)->Args({3, 1})->Args({3, 2})->Args({5, 1})->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
  const auto ctx = FieldCtx::make(state.range(0), state.range(1));
  VerifyOptions opts;
  opts.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(verify_theorem(ctx, opts).pass);
}
BENCHMARK(BM_Verify)->Args({3, 1})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_ValidateAtlas(benchmark::State& state) {
  const auto ctx = FieldCtx::make(3, 1);
  const auto charts = atlas(3);
  for (auto _ : state)
    for (const auto& c : charts) benchmark::DoNotOptimize(validate_chart(c, ctx).passed());
}
BENCHMARK(BM_ValidateAtlas)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace frobtrace

BENCHMARK_MAIN();
