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

#include "bench_scene.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace hyperseg::bench {

namespace {
constexpr std::size_t kBlocks = 4;

std::size_t block_of(std::size_t r, std::size_t c, std::size_t h, std::size_t w) {
  return (r * kBlocks / h) * kBlocks + c * kBlocks / w;
}
}  // namespace

HyperCube block_cube(std::size_t h, std::size_t w, std::size_t bands, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 6.283);
  std::normal_distribution<double> jitter(0.0, 0.02);
  std::vector<double> phases(kBlocks * kBlocks);
  for (auto& p : phases) p = phase(rng);
  std::vector<float> data(h * w * bands);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c) {
      const double p = phases[block_of(r, c, h, w)];
      for (std::size_t b = 0; b < bands; ++b) {
        const double v = 0.5 + 0.35 * std::cos(p + 0.2 * static_cast<double>(b)) + jitter(rng);
        data[(r * w + c) * bands + b] = static_cast<float>(std::clamp(v, 0.0, 1.0));
      }
    }
  return HyperCube(h, w, bands, std::move(data), true);
}

LabelMap block_truth(std::size_t h, std::size_t w) {
  std::vector<std::int32_t> labels(h * w);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c)
      labels[r * w + c] = static_cast<std::int32_t>(1 + block_of(r, c, h, w));
  return LabelMap(h, w, std::move(labels));
}

}  // namespace hyperseg::bench
