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

#include "hyperseg/cube.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "hyperseg/error.hpp"
#include "hyperseg/matrix.hpp"

namespace hyperseg {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw ShapeError("Matrix::from_rows: ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

HyperCube::HyperCube(std::size_t height, std::size_t width, std::size_t bands,
                     std::vector<float> data, bool normalized, double scale)
    : height_(height),
      width_(width),
      bands_(bands),
      data_(std::move(data)),
      normalized_(normalized),
      scale_(scale) {
  if (height == 0 || width == 0 || bands == 0)
    throw ShapeError("HyperCube: every dimension must be at least 1");
  if (data_.size() != height * width * bands)
    throw ShapeError("HyperCube: payload has " + std::to_string(data_.size()) +
                     " values, expected " + std::to_string(height * width * bands));
  if (normalized_) {
    const bool in_range = std::all_of(data_.begin(), data_.end(),
                                      [](float v) { return v >= 0.0f && v <= 1.0f; });
    if (!in_range) throw InvalidArgument("HyperCube: normalized cube has values outside [0, 1]");
  }
}

LabelMap::LabelMap(std::size_t height, std::size_t width, std::vector<std::int32_t> labels)
    : height_(height), width_(width), labels_(std::move(labels)) {
  if (labels_.size() != height * width)
    throw ShapeError("LabelMap: " + std::to_string(labels_.size()) + " labels for a " +
                     std::to_string(height) + "x" + std::to_string(width) + " grid");
  if (std::any_of(labels_.begin(), labels_.end(), [](std::int32_t l) { return l < 0; }))
    throw InvalidArgument("LabelMap: labels must be non-negative");
}

std::int32_t LabelMap::max_label() const noexcept {
  return labels_.empty() ? 0 : *std::max_element(labels_.begin(), labels_.end());
}

std::size_t LabelMap::count_labels() const {
  std::set<std::int32_t> seen;
  for (auto l : labels_)
    if (l != 0) seen.insert(l);
  return seen.size();
}

double percentile_scale(std::span<const float> values) {
  if (values.empty()) throw DegenerateInput("percentile_scale: empty input");
  std::vector<float> copy(values.begin(), values.end());
  // Nearest rank: ascending index ceil(0.95 n) - 1, in integer arithmetic.
  const std::size_t n = copy.size();
  const std::size_t rank = (95 * n + 99) / 100;
  const std::size_t index = rank == 0 ? 0 : rank - 1;
  std::nth_element(copy.begin(), copy.begin() + static_cast<std::ptrdiff_t>(index), copy.end());
  return static_cast<double>(copy[index]);
}

HyperCube normalize(const HyperCube& cube) {
  if (cube.normalized()) throw InvalidArgument("normalize: cube is already normalized");
  const auto values = cube.values();
  if (!std::all_of(values.begin(), values.end(), [](float v) { return std::isfinite(v); }))
    throw DegenerateInput("normalize: cube contains non-finite values");
  const double scale = percentile_scale(values);
  if (!(scale > 0.0))
    throw DegenerateInput("normalize: 95th percentile is not positive (all-zero cube?)");

  std::vector<float> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [scale](float v) {
    const double clipped = std::clamp(static_cast<double>(v), 0.0, scale);
    return static_cast<float>(std::min(clipped / scale, 1.0));
  });
  return HyperCube(cube.height(), cube.width(), cube.bands(), std::move(out), true, scale);
}

Matrix spectra_matrix(const HyperCube& cube) {
  Matrix m(cube.pixel_count(), cube.bands());
  const auto values = cube.values();
  std::copy(values.begin(), values.end(), m.data().begin());
  return m;
}

}  // namespace hyperseg
