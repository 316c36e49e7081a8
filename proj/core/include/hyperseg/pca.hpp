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
#include <span>
#include <vector>

#include "hyperseg/cube.hpp"
#include "hyperseg/matrix.hpp"

namespace hyperseg {

/// Principal-component projection fitted from the band covariance.
struct PcaModel {
  std::vector<double> mean;                // length L
  Matrix components;                       // R x L, orthonormal rows
  std::vector<double> explained_variance;  // all L eigenvalues, descending
  double retained_fraction = 1.0;          // cumulative share of the first R

  std::size_t input_dim() const noexcept { return mean.size(); }
  std::size_t output_dim() const noexcept { return components.rows(); }
};

/// Fits on the rows of `samples`. R is the smallest count whose cumulative
/// explained variance reaches `variance_threshold`. Each component's sign is
/// fixed so its largest-magnitude entry is positive.
PcaModel fit_pca(const Matrix& samples, double variance_threshold);

/// Fits on the spectra of a normalized cube.
PcaModel fit_pca(const HyperCube& cube, double variance_threshold);

/// (x - mean) * components^T for every row. Throws ShapeError on a
/// dimension mismatch.
Matrix apply_pca(const Matrix& samples, const PcaModel& model);

/// Projects every spectrum; the result has R bands and is not normalized.
HyperCube apply_pca(const HyperCube& cube, const PcaModel& model);

/// Maps R projected coordinates back to the L-dimensional input space.
std::vector<double> reconstruct(std::span<const double> projected,
                                const PcaModel& model);

}  // namespace hyperseg
