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

#include <gtest/gtest.h>

#include <cmath>

#include "hyperseg/error.hpp"
#include "hyperseg/noise.hpp"
#include "support/scenes.hpp"

namespace hyperseg {
namespace {

std::size_t changed_pixels(const HyperCube& a, const HyperCube& b) {
  std::size_t n = 0;
  for (std::size_t p = 0; p < a.pixel_count(); ++p) {
    const auto x = a.spectrum(p), y = b.spectrum(p);
    if (!std::equal(x.begin(), x.end(), y.begin())) ++n;
  }
  return n;
}

TEST(Gaussian, SelectsExactPixelCountAndClips) {
  const HyperCube cube = testing::random_cube(20, 25, 6, 1);
  const HyperCube noisy = add_gaussian(cube, 0.3, 0.1, 7);
  EXPECT_EQ(changed_pixels(cube, noisy), 50u);
  EXPECT_TRUE(noisy.normalized());
  for (float v : noisy.values()) {
    EXPECT_GE(v, 0.0f);
    EXPECT_LE(v, 1.0f);
  }
  EXPECT_EQ(changed_pixels(cube, add_gaussian(cube, 0.3, 0.0, 7)), 0u);
  EXPECT_EQ(changed_pixels(cube, add_gaussian(cube, 0.3, 1.0, 7)), 500u);
  // 0.3 * 10 = 3 exactly, despite 0.3 not being representable
  EXPECT_EQ(changed_pixels(testing::random_cube(2, 5, 2, 3), add_gaussian(testing::random_cube(2, 5, 2, 3), 0.2, 0.3, 1)), 3u);
}

TEST(Gaussian, Statistics) {
  const HyperCube cube = testing::constant_cube(100, 100, 4, 0.5f);
  const HyperCube noisy = add_gaussian(cube, 0.05, 1.0, 3);
  double sum = 0.0, sq = 0.0;
  for (float v : noisy.values()) {
    const double d = v - 0.5;
    sum += d;
    sq += d * d;
  }
  const double n = static_cast<double>(noisy.values().size());
  EXPECT_NEAR(sum / n, 0.0, 0.002);
  EXPECT_NEAR(std::sqrt(sq / n), 0.05, 0.002);
}

TEST(Impulsive, SaturatesOrZeroesWholeSpectra) {
  const HyperCube cube = testing::random_cube(40, 50, 5, 2);
  const HyperCube noisy = add_impulsive(cube, 0.1, 4);
  std::size_t ones = 0, zeros = 0;
  for (std::size_t p = 0; p < cube.pixel_count(); ++p) {
    const auto s = noisy.spectrum(p), o = cube.spectrum(p);
    if (std::equal(s.begin(), s.end(), o.begin())) continue;
    if (std::all_of(s.begin(), s.end(), [](float v) { return v == 1.0f; })) ++ones;
    else if (std::all_of(s.begin(), s.end(), [](float v) { return v == 0.0f; })) ++zeros;
    else ADD_FAILURE() << "pixel " << p << " is neither salt nor pepper";
  }
  EXPECT_EQ(ones + zeros, 200u);
  EXPECT_NEAR(static_cast<double>(ones) / 200.0, 0.5, 0.12);
}

TEST(Poisson, PhotonModelPreservesMean) {
  const HyperCube cube = testing::constant_cube(100, 100, 3, 0.4f);
  const double lambda = 5.5;
  const HyperCube noisy = add_poisson(cube, lambda, 5);
  double sum = 0.0, sq = 0.0;
  for (float v : noisy.values()) {
    sum += v;
    sq += (v - 0.4) * (v - 0.4);
    // values lie on the 1/lambda lattice before clipping
    const double k = v * lambda;
    if (v < 1.0f) {
      EXPECT_NEAR(k, std::round(k), 1e-4);
    }
  }
  const double n = static_cast<double>(noisy.values().size());
  // clipping at 1 pulls the mean down slightly; variance of Poisson(2.2) / 5.5^2
  EXPECT_NEAR(sum / n, 0.4, 0.02);
  EXPECT_NEAR(sq / n, 0.4 / lambda, 0.02);
}

TEST(Poisson, AdditiveSaturates) {
  const HyperCube cube = testing::random_cube(10, 10, 3, 6);
  const HyperCube noisy = add_poisson_additive(cube, 5.5, 1);
  std::size_t ones = 0;
  for (float v : noisy.values()) ones += v == 1.0f;
  EXPECT_GT(static_cast<double>(ones) / noisy.values().size(), 0.95);
}

TEST(Noise, DeterministicPerSeed) {
  const HyperCube cube = testing::random_cube(12, 12, 4, 7);
  for (auto kind : {NoiseKind::gaussian, NoiseKind::impulsive, NoiseKind::poisson}) {
    NoiseSpec s;
    s.kind = kind;
    s.sigma = 0.1;
    s.seed = 3;
    const HyperCube a = apply_noise(cube, s), b = apply_noise(cube, s);
    EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
    s.seed = 4;
    const HyperCube c = apply_noise(cube, s);
    EXPECT_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin())) << to_string(kind);
  }
}

TEST(Noise, KindNames) {
  for (auto kind : {NoiseKind::gaussian, NoiseKind::impulsive, NoiseKind::poisson, NoiseKind::poisson_additive})
    EXPECT_EQ(noise_kind_from_string(to_string(kind)), kind);
  EXPECT_THROW(noise_kind_from_string("speckle"), InvalidArgument);
}

TEST(Noise, Errors) {
  const HyperCube cube = testing::random_cube(4, 4, 2, 8);
  EXPECT_THROW(add_gaussian(cube, -0.1, 0.1, 0), InvalidArgument);
  EXPECT_THROW(add_gaussian(cube, 0.1, 1.5, 0), InvalidArgument);
  EXPECT_THROW(add_impulsive(cube, -0.1, 0), InvalidArgument);
  EXPECT_THROW(add_poisson(cube, 0.0, 0), InvalidArgument);
  EXPECT_THROW(add_gaussian(HyperCube(1, 1, 1, {3.0f}), 0.1, 0.1, 0), InvalidArgument);
}

}  // namespace
}  // namespace hyperseg
