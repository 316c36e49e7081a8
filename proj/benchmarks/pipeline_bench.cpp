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

#include "bench_scene.hpp"
#include "hyperseg/regionseg.hpp"

namespace {

void BM_Segment(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto cube = hyperseg::bench::block_cube(side, side, 32, 5);
  hyperseg::SegmentationConfig cfg;
  cfg.superpixels = side * side / 64;
  cfg.seg_bandwidth = 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(hyperseg::segment(cube, cfg));
}
BENCHMARK(BM_Segment)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
