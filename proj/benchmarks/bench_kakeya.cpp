/*
 * Copyright 2026 The kakeya-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "kakeya/amplify.hpp"
#include "kakeya/maximal.hpp"
#include "kakeya/polymethod.hpp"
#include "kakeya/random.hpp"
#include "kakeya/rings.hpp"

using namespace kakeya;

static void BM_FieldMul(benchmark::State& state) {
  const auto F = Field::of_order(static_cast<std::uint64_t>(state.range(0)));
  Rng rng(1);
  std::vector<Elem> xs(1024);
  for (auto& x : xs) x = static_cast<Elem>(rng.below(F->q()));
  for (auto _ : state) {
    Elem acc = 1;
    for (Elem x : xs) acc = F->add(F->mul(acc, x), x);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_FieldMul)->Arg(7)->Arg(256)->Arg(65536)->Arg(1 << 17);

static void BM_KakeyaMaximal(benchmark::State& state) {
  const AffineSpace sp(Field::of_order(static_cast<std::uint64_t>(state.range(0))), static_cast<std::size_t>(state.range(1)));
  Rng rng(2);
  const auto f = random_point_function(sp, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kakeya_maximal(f).values.data());
}
BENCHMARK(BM_KakeyaMaximal)->Args({5, 2})->Args({17, 2})->Args({5, 3})->Args({7, 3});

static void BM_RowReduce(benchmark::State& state) {
  const auto F = Field::make(101);
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  Matrix m(F, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = static_cast<Elem>(rng.below(101));
  for (auto _ : state) benchmark::DoNotOptimize(row_reduce(m).rank);
}
BENCHMARK(BM_RowReduce)->Arg(32)->Arg(128)->Arg(256);

static void BM_DvirCheck(benchmark::State& state) {
  const auto F = Field::make(static_cast<std::uint32_t>(state.range(0)));
  const AffineSpace sp(F, 2);
  const auto E = build_small_kakeya(F, 2);
  for (auto _ : state) benchmark::DoNotOptimize(dvir_check(sp, E).rank);
}
BENCHMARK(BM_DvirCheck)->Arg(7)->Arg(13)->Arg(23);

static void BM_RingKakeyaCheck(benchmark::State& state) {
  const RingSpace sp(Ring::poly_mod_xk(Field::make(2), 2), 2);
  const auto E = grow_minimal_kakeya(sp, 4);
  for (auto _ : state) benchmark::DoNotOptimize(ring_kakeya_check(sp, E).kakeya);
}
BENCHMARK(BM_RingKakeyaCheck);

static void BM_Pushforward(benchmark::State& state) {
  const auto F = Field::make(5);
  const AffineSpace sp(F, 4);
  Rng rng(5);
  const auto f = random_point_function(sp, rng);
  const auto proj = random_flat_projection(F, 4, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(pushforward_power(f, proj).f_T.values().data());
}
BENCHMARK(BM_Pushforward);

BENCHMARK_MAIN();
