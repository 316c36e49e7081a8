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

#include <cstddef>
#include <cstdint>

#include "hyperseg/cube.hpp"

namespace hyperseg::bench {

// Piecewise-constant 4 x 4 block scene with mild Gaussian jitter, already in [0, 1].
HyperCube block_cube(std::size_t h, std::size_t w, std::size_t bands, std::uint64_t seed);

// Ground truth for block_cube: 1 + block index.
LabelMap block_truth(std::size_t h, std::size_t w);

}  // namespace hyperseg::bench
