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
#include <span>
#include <vector>

namespace hyperseg {

// 4-connected component utilities over row-major label grids.

struct Component {
  std::int32_t label = 0;
  std::vector<std::size_t> pixels;  // ascending
};

/// Components in raster order of their first pixel.
std::vector<Component> connected_components(std::span<const std::int32_t> labels,
                                            std::size_t height, std::size_t width);

/// Per-pixel component index, numbered in raster order of first pixel.
std::vector<std::int32_t> component_index(std::span<const std::int32_t> labels,
                                          std::size_t height, std::size_t width,
                                          std::size_t* count = nullptr);

/// Keeps, for every label, its largest component (first in raster order on
/// ties). Each other component is absorbed by the neighbouring label whose
/// already-connected pixels share the longest boundary with it (lower label
/// on ties). Afterwards every label occupies one 4-connected region.
std::vector<std::int32_t> enforce_connectivity(std::span<const std::int32_t> labels,
                                               std::size_t height, std::size_t width);

/// Repeatedly relabels components smaller than `min_area` pixels, smallest
/// first, to the most frequent label among the distinct 4-adjacent pixels
/// outside the component (lower label on ties). Stops once no undersized
/// component remains or a pass changes nothing.
std::vector<std::int32_t> remove_small_regions(std::span<const std::int32_t> labels,
                                               std::size_t height, std::size_t width,
                                               std::size_t min_area);

}  // namespace hyperseg
