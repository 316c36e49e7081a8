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

/// H x W x L hyperspectral cube stored pixel-interleaved (row-major over
/// (row, column, band)), which is the layout of a C-ordered (H, W, L) array.
///
/// A cube is immutable once built. `normalized()` cubes hold values in
/// [0, 1] and remember the scale `V` they were divided by.
class HyperCube {
 public:
  HyperCube() = default;

  /// Throws ShapeError when the dimensions are zero or disagree with the
  /// payload length, InvalidArgument when `normalized` is set but a value
  /// lies outside [0, 1].
  HyperCube(std::size_t height, std::size_t width, std::size_t bands,
            std::vector<float> data, bool normalized = false,
            double scale = 1.0);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t bands() const noexcept { return bands_; }
  std::size_t pixel_count() const noexcept { return height_ * width_; }
  bool normalized() const noexcept { return normalized_; }
  /// Divisor applied by normalize(); 1 for raw cubes.
  double scale() const noexcept { return scale_; }

  std::span<const float> values() const noexcept { return data_; }

  std::span<const float> spectrum(std::size_t pixel) const noexcept {
    return {data_.data() + pixel * bands_, bands_};
  }
  std::span<const float> spectrum(std::size_t row, std::size_t col) const noexcept {
    return spectrum(row * width_ + col);
  }
  float at(std::size_t row, std::size_t col, std::size_t band) const noexcept {
    return data_[(row * width_ + col) * bands_ + band];
  }

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::size_t bands_ = 0;
  std::vector<float> data_;
  bool normalized_ = false;
  double scale_ = 1.0;
};

/// H x W map of non-negative integer labels. Label 0 means background or
/// unlabeled.
class LabelMap {
 public:
  LabelMap() = default;
  /// Throws ShapeError on a size mismatch and InvalidArgument on negative
  /// labels.
  LabelMap(std::size_t height, std::size_t width, std::vector<std::int32_t> labels);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return labels_.size(); }

  std::span<const std::int32_t> labels() const noexcept { return labels_; }
  std::int32_t operator[](std::size_t pixel) const noexcept { return labels_[pixel]; }
  std::int32_t at(std::size_t row, std::size_t col) const noexcept {
    return labels_[row * width_ + col];
  }

  std::int32_t max_label() const noexcept;
  /// Number of distinct non-zero labels.
  std::size_t count_labels() const;

  friend bool operator==(const LabelMap&, const LabelMap&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<std::int32_t> labels_;
};

/// Clips every value to [0, V] and divides by V, where V is the nearest-rank
/// 95th percentile over all H*W*L values (ascending index ceil(0.95 n) - 1).
///
/// Throws InvalidArgument if the cube is already normalized and
/// DegenerateInput when V is not positive or a value is non-finite.
HyperCube normalize(const HyperCube& cube);

/// The value normalize() would divide by.
double percentile_scale(std::span<const float> values);

/// Copies the cube's spectra into an N x L matrix.
class Matrix;
Matrix spectra_matrix(const HyperCube& cube);

}  // namespace hyperseg
