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

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "hyperseg/cube.hpp"

namespace hyperseg::app {

/// Color of label `label` out of `label_count`: black for 0, otherwise the
/// fully saturated, full-value hue label / label_count.
std::array<std::uint8_t, 3> label_color(std::int32_t label, std::int32_t label_count);

/// Interleaved RGB pixels of a label map.
std::vector<std::uint8_t> colorize(const LabelMap& labels);

/// Grey band-mean image of the cube with superpixel boundaries in red.
std::vector<std::uint8_t> boundary_overlay(const HyperCube& cube, const LabelMap& labels);

/// Encodes 8-bit RGB as PNG. Output bytes depend only on the input pixels.
std::vector<std::uint8_t> encode_png(std::size_t height, std::size_t width,
                                     const std::vector<std::uint8_t>& rgb);

void write_png(const std::filesystem::path& path, std::size_t height, std::size_t width,
               const std::vector<std::uint8_t>& rgb);

}  // namespace hyperseg::app
