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
#include <filesystem>
#include <string>
#include <vector>

#include "hyperseg/cube.hpp"

namespace hyperseg {

// Reader and writer for the NumPy .npy container (format version 1.0 on
// write; 1.0, 2.0 and 3.0 on read).
//
// Cubes are written as little-endian float32 with shape (H, W, L) and labels
// as little-endian int32 with shape (H, W), both C-ordered, so a save/load
// round trip is bit-exact. Readers also accept a few common source dtypes
// and convert them.

struct NpyHeader {
  std::string descr;               // e.g. "<f4"
  bool fortran_order = false;
  std::vector<std::size_t> shape;
  std::size_t header_bytes = 0;    // offset of the payload
};

/// Parses the header of an in-memory .npy buffer. Throws IoError.
NpyHeader parse_npy_header(const std::vector<char>& buffer);

/// Serialises a version 1.0 header (magic, version, length, padded dict).
std::string make_npy_header(const std::string& descr,
                            const std::vector<std::size_t>& shape);

/// Accepted dtypes: float32, float64, int16, uint16, int32, uint8.
HyperCube load_cube(const std::filesystem::path& path);
void save_cube(const std::filesystem::path& path, const HyperCube& cube);

/// Accepted dtypes: int32, int64, int16, uint16, int8, uint8, uint32.
LabelMap load_labels(const std::filesystem::path& path);
void save_labels(const std::filesystem::path& path, const LabelMap& labels);

}  // namespace hyperseg
