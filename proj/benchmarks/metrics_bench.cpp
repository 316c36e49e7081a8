// Copyright 2026 The hyperseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hyperseg/metrics.hpp"

namespace {

hyperseg::LabelMap random_map(std::size_t side, std::int32_t classes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int32_t> pick(0, classes);
  std::vector<std::int32_t> v(side * side);
  for (auto& x : v) x = pick(rng);
  return hyperseg::LabelMap(side, side, std::move(v));
}

void BM_Evaluate(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto pred = random_map(side, 40, 1);
  const auto truth = random_map(side, 16, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hyperseg::nmi(pred, truth));
    benchmark::DoNotOptimize(hyperseg::ari(pred, truth));
    benchmark::DoNotOptimize(hyperseg::unsupervised_f1(pred, truth));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(side * side));
}
BENCHMARK(BM_Evaluate)->Arg(128)->Arg(512);

void BM_Undersegmentation(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto sp = random_map(side, 500, 3);
  const auto truth = random_map(side, 16, 4);
  for (auto _ : state) benchmark::DoNotOptimize(hyperseg::undersegmentation_error(sp, truth));
}
BENCHMARK(BM_Undersegmentation)->Arg(128)->Arg(512);

}  // namespace
