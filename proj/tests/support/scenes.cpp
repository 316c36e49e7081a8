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

#include "support/scenes.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <unistd.h>

namespace hyperseg::testing {

HyperCube random_cube(std::size_t h, std::size_t w, std::size_t bands, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  std::vector<float> v(h * w * bands);
  for (auto& x : v) x = u(rng);
  return HyperCube(h, w, bands, std::move(v), true, 1.0);
}

HyperCube constant_cube(std::size_t h, std::size_t w, std::size_t bands, float value) {
  return HyperCube(h, w, bands, std::vector<float>(h * w * bands, value), true, 1.0);
}

Scene block_scene(std::size_t h, std::size_t w, std::size_t bands, std::size_t rows,
                  std::size_t cols, std::size_t classes, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  std::normal_distribution<double> g(0.0, 1.0);
  // smooth class spectra: a few random cosines around a random level
  std::vector<std::vector<double>> spectra(classes, std::vector<double>(bands));
  for (auto& s : spectra) {
    const double level = u(rng);
    const double amp = 0.1 + 0.2 * u(rng);
    const double freq = 1.0 + 3.0 * u(rng);
    const double phase = 6.28 * u(rng);
    for (std::size_t b = 0; b < bands; ++b) {
      const double t = static_cast<double>(b) / static_cast<double>(std::max<std::size_t>(bands, 2) - 1);
      s[b] = std::clamp(level + amp * std::cos(freq * 6.28 * t + phase), 0.0, 1.0);
    }
  }
  std::vector<float> v(h * w * bands);
  std::vector<std::int32_t> labels(h * w);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const std::size_t bi = r * rows / h;
      const std::size_t bj = c * cols / w;
      const std::size_t k = (bi * cols + bj) % classes;
      labels[r * w + c] = static_cast<std::int32_t>(k + 1);
      for (std::size_t b = 0; b < bands; ++b) {
        const double x = spectra[k][b] + (sigma > 0.0 ? sigma * g(rng) : 0.0);
        v[(r * w + c) * bands + b] = static_cast<float>(std::clamp(x, 0.0, 1.0));
      }
    }
  }
  return {HyperCube(h, w, bands, std::move(v), true, 1.0), LabelMap(h, w, std::move(labels))};
}

Scene two_region_scene(std::size_t h, std::size_t w, std::size_t bands, float a, float b) {
  std::vector<float> v(h * w * bands);
  std::vector<std::int32_t> labels(h * w);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const bool left = c < w / 2;
      labels[r * w + c] = left ? 1 : 2;
      std::fill_n(v.begin() + static_cast<std::ptrdiff_t>((r * w + c) * bands), bands, left ? a : b);
    }
  }
  return {HyperCube(h, w, bands, std::move(v), true, 1.0), LabelMap(h, w, std::move(labels))};
}

std::vector<std::int32_t> random_labels(std::size_t n, std::int32_t lo, std::int32_t hi,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int32_t> u(lo, hi);
  std::vector<std::int32_t> out(n);
  for (auto& x : out) x = u(rng);
  return out;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("hyperseg_test_" + std::to_string(::getpid()) + "_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace hyperseg::testing
