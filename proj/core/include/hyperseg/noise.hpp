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

#pragma once

#include <cstdint>
#include <string>

#include "hyperseg/cube.hpp"

namespace hyperseg {

enum class NoiseKind { gaussian, impulsive, poisson, poisson_additive };

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& s);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::gaussian;
  double sigma = 0.0;           // gaussian standard deviation
  double pixel_fraction = 0.1;  // gaussian selection / impulsive density
  double lambda = 5.5;          // poisson
  std::uint64_t seed = 0;

  /// Throws InvalidArgument when a parameter is invalid for `kind`.
  void validate() const;
};

// All generators pick pixel locations without replacement, leave unselected
// pixels bit-identical, clip to [0, 1] and require a normalized cube.

/// floor(fraction * N) pixels get independent N(0, sigma) draws on every band.
HyperCube add_gaussian(const HyperCube& cube, double sigma, double pixel_fraction,
                       std::uint64_t seed);

/// floor(density * N) pixels are saturated to all-ones or zeroed, 50/50.
HyperCube add_impulsive(const HyperCube& cube, double density, std::uint64_t seed);

/// Photon-count model: v' = Poisson(v * lambda) / lambda.
HyperCube add_poisson(const HyperCube& cube, double lambda, std::uint64_t seed);

/// Literal additive reading: v' = v + Poisson(lambda). Saturates a [0, 1]
/// cube for any practical lambda; kept for comparison only.
HyperCube add_poisson_additive(const HyperCube& cube, double lambda, std::uint64_t seed);

HyperCube apply_noise(const HyperCube& cube, const NoiseSpec& spec);

}  // namespace hyperseg
