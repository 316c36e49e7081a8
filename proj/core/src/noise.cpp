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

#include "hyperseg/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hyperseg/error.hpp"
#include "random.hpp"

namespace hyperseg {
namespace {

void require_normalized(const HyperCube& cube, const char* who) {
  if (!cube.normalized()) throw InvalidArgument(std::string(who) + ": cube must be normalized");
}

std::size_t fraction_count(double fraction, std::size_t n) {
  // Guard against 0.29 * 100 = 28.999...
  const double v = std::floor(fraction * static_cast<double>(n) * (1.0 + 1e-12));
  return std::min(n, static_cast<std::size_t>(v));
}

// First `count` entries of a seeded partial Fisher-Yates shuffle of 0..n-1.
std::vector<std::size_t> pick_pixels(std::size_t n, std::size_t count, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t span = n - i;
    const auto j = i + detail::uniform_index(rng, span);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  return idx;
}

float clip01(double v) { return static_cast<float>(std::clamp(v, 0.0, 1.0)); }

HyperCube rebuild(const HyperCube& like, std::vector<float> values) {
  return HyperCube(like.height(), like.width(), like.bands(), std::move(values), true, like.scale());
}

}  // namespace

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::gaussian: return "gaussian";
    case NoiseKind::impulsive: return "impulsive";
    case NoiseKind::poisson: return "poisson";
    case NoiseKind::poisson_additive: return "poisson-additive";
  }
  return "?";
}

NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "gaussian") return NoiseKind::gaussian;
  if (s == "impulsive" || s == "salt-pepper") return NoiseKind::impulsive;
  if (s == "poisson") return NoiseKind::poisson;
  if (s == "poisson-additive") return NoiseKind::poisson_additive;
  throw InvalidArgument("unknown noise kind '" + s + "'");
}

void NoiseSpec::validate() const {
  switch (kind) {
    case NoiseKind::gaussian:
      if (!(sigma >= 0.0)) throw InvalidArgument("gaussian noise: sigma must be >= 0");
      [[fallthrough]];
    case NoiseKind::impulsive:
      if (!(pixel_fraction >= 0.0 && pixel_fraction <= 1.0))
        throw InvalidArgument("noise: pixel fraction must lie in [0, 1]");
      break;
    case NoiseKind::poisson:
    case NoiseKind::poisson_additive:
      if (!(lambda > 0.0)) throw InvalidArgument("poisson noise: lambda must be > 0");
      break;
  }
}

HyperCube add_gaussian(const HyperCube& cube, double sigma, double pixel_fraction,
                       std::uint64_t seed) {
  require_normalized(cube, "add_gaussian");
  if (!(sigma >= 0.0)) throw InvalidArgument("add_gaussian: sigma must be >= 0");
  if (!(pixel_fraction >= 0.0 && pixel_fraction <= 1.0))
    throw InvalidArgument("add_gaussian: pixel fraction must lie in [0, 1]");
  std::vector<float> out(cube.values().begin(), cube.values().end());
  if (sigma == 0.0) return rebuild(cube, std::move(out));

  std::mt19937_64 rng(seed);
  const auto pixels = pick_pixels(cube.pixel_count(), fraction_count(pixel_fraction, cube.pixel_count()), rng);
  std::normal_distribution<double> normal(0.0, sigma);
  const std::size_t l = cube.bands();
  for (auto p : pixels) {
    for (std::size_t b = 0; b < l; ++b) {
      float& v = out[p * l + b];
      v = clip01(static_cast<double>(v) + normal(rng));
    }
  }
  return rebuild(cube, std::move(out));
}

HyperCube add_impulsive(const HyperCube& cube, double density, std::uint64_t seed) {
  require_normalized(cube, "add_impulsive");
  if (!(density >= 0.0 && density <= 1.0))
    throw InvalidArgument("add_impulsive: density must lie in [0, 1]");
  std::vector<float> out(cube.values().begin(), cube.values().end());
  std::mt19937_64 rng(seed);
  const auto pixels = pick_pixels(cube.pixel_count(), fraction_count(density, cube.pixel_count()), rng);
  const std::size_t l = cube.bands();
  for (auto p : pixels) {
    const float value = (rng() >> 63) ? 1.0f : 0.0f;
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(p * l), l, value);
  }
  return rebuild(cube, std::move(out));
}

HyperCube add_poisson(const HyperCube& cube, double lambda, std::uint64_t seed) {
  require_normalized(cube, "add_poisson");
  if (!(lambda > 0.0)) throw InvalidArgument("add_poisson: lambda must be > 0");
  std::vector<float> out(cube.values().begin(), cube.values().end());
  std::mt19937_64 rng(seed);
  for (auto& v : out) {
    if (v <= 0.0f) continue;  // Poisson(0) is identically 0
    std::poisson_distribution<long long> photons(static_cast<double>(v) * lambda);
    v = clip01(static_cast<double>(photons(rng)) / lambda);
  }
  return rebuild(cube, std::move(out));
}

HyperCube add_poisson_additive(const HyperCube& cube, double lambda, std::uint64_t seed) {
  require_normalized(cube, "add_poisson_additive");
  if (!(lambda > 0.0)) throw InvalidArgument("add_poisson_additive: lambda must be > 0");
  std::vector<float> out(cube.values().begin(), cube.values().end());
  std::mt19937_64 rng(seed);
  std::poisson_distribution<long long> noise(lambda);
  for (auto& v : out) v = clip01(static_cast<double>(v) + static_cast<double>(noise(rng)));
  return rebuild(cube, std::move(out));
}

HyperCube apply_noise(const HyperCube& cube, const NoiseSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case NoiseKind::gaussian: return add_gaussian(cube, spec.sigma, spec.pixel_fraction, spec.seed);
    case NoiseKind::impulsive: return add_impulsive(cube, spec.pixel_fraction, spec.seed);
    case NoiseKind::poisson: return add_poisson(cube, spec.lambda, spec.seed);
    case NoiseKind::poisson_additive: return add_poisson_additive(cube, spec.lambda, spec.seed);
  }
  throw InternalError("apply_noise: unhandled kind");
}

}  // namespace hyperseg
