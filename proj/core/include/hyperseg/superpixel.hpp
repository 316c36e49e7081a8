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

#include "hyperseg/cube.hpp"
#include "hyperseg/matrix.hpp"
#include "hyperseg/meanshift.hpp"

namespace hyperseg {

/// One pixel of the augmented image: its spectrum P, the center Q of the
/// spectral cluster it was assigned to, and its position.
struct AugmentedPixel {
  std::span<const float> spectrum;
  std::span<const double> cluster_spectrum;
  double x = 0.0;  // column
  double y = 0.0;  // row

  /// Flattened <P, Q, x, y>, length 2L + 2.
  std::vector<double> feature() const;
};

/// The augmented image in compact form. Cluster spectra are shared through
/// the cluster model rather than copied per pixel.
class AugmentedImage {
 public:
  AugmentedImage(const HyperCube& cube, const ClusterModel& clusters);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t bands() const noexcept { return bands_; }
  std::size_t size() const noexcept { return height_ * width_; }
  std::size_t feature_length() const noexcept { return 2 * bands_ + 2; }

  AugmentedPixel operator[](std::size_t pixel) const noexcept {
    return {spectrum(pixel), cluster_spectrum(pixel),
            static_cast<double>(pixel % width_), static_cast<double>(pixel / width_)};
  }
  std::span<const float> spectrum(std::size_t pixel) const noexcept {
    return {spectra_.data() + pixel * bands_, bands_};
  }
  std::span<const double> cluster_spectrum(std::size_t pixel) const noexcept {
    return centers_.row(static_cast<std::size_t>(assignment_[pixel]));
  }

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::size_t bands_ = 0;
  std::vector<float> spectra_;
  Matrix centers_;
  std::vector<std::int32_t> assignment_;
};

/// Throws ShapeError when the assignment does not cover every pixel or the
/// center dimension differs from the band count, InvalidArgument when the
/// cube is not normalized.
AugmentedImage build_augmented_image(const HyperCube& cube, const ClusterModel& clusters);

struct SlicParams {
  std::size_t superpixels = 500;  // requested K
  double m = 0.2;                 // spatial weight
  double m_clust = 0.8;           // cluster-spectrum weight
  std::size_t max_iters = 10;
  double conv_tol = 1e-3;
};

struct Superpixel {
  std::vector<double> mean_spectrum;
  std::vector<double> mean_cluster_spectrum;
  double x = 0.0;
  double y = 0.0;
  std::vector<std::size_t> members;  // ascending pixel indices
};

struct SuperpixelSet {
  std::size_t height = 0;
  std::size_t width = 0;
  double interval = 0.0;                 // grid step S = sqrt(N / K)
  std::vector<std::int32_t> assignment;  // per pixel, index into superpixels
  std::vector<Superpixel> superpixels;

  // Diagnostics of the clustering loop.
  std::vector<double> objective_history;          // total D_ahs after each assignment
  std::vector<std::int32_t> unconstrained_assignment;  // last assignment before connectivity repair
  std::size_t iterations = 0;

  std::size_t size() const noexcept { return superpixels.size(); }
  /// Labels 1..K (0 is never used).
  LabelMap label_map() const;
};

/// Distance between an augmented pixel (or center) and a superpixel center:
///   d_spec / sqrt(L) + m_clust * d_clust / sqrt(L) + m * d_xy / (S * sqrt(2))
double augmented_distance(std::span<const float> spectrum,
                          std::span<const double> cluster_spectrum, double x, double y,
                          const Superpixel& center, double m, double m_clust,
                          double interval);

/// Augmented hyperspectral SLIC: grid-seeded, windowed (2S x 2S) k-means
/// under augmented_distance, followed by 4-connectivity repair. Empty
/// superpixels are dropped, so size() may be below the requested K.
SuperpixelSet slic(const AugmentedImage& image, const SlicParams& params);

/// Per-superpixel center vectors (mean spectrum..., x, y), K x (L + 2).
Matrix superpixel_features(const SuperpixelSet& set);

}  // namespace hyperseg
