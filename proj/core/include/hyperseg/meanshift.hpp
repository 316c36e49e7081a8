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
#include <vector>

#include "hyperseg/matrix.hpp"

namespace hyperseg {

/// Result of mean-shift clustering.
///
/// Cluster indices are canonical: ordered by descending member count, ties
/// broken by the smallest member point index.
struct ClusterModel {
  Matrix centers;                     // U x D
  std::vector<std::int32_t> assignment;  // per point, in [0, U)
  std::vector<std::size_t> sizes;     // members per cluster
  double bandwidth = 0.0;

  std::size_t cluster_count() const noexcept { return centers.rows(); }
};

/// Flat-kernel mean-shift.
///
/// Starting from a seeded-random unvisited point, the window mean is shifted
/// to the average of all points closer than `bandwidth` until the shift is
/// shorter than bandwidth * 1e-3. Every point seen inside a window during a
/// climb is marked visited. A converged mode closer than bandwidth / 2 to an
/// existing center is merged into it by averaging, otherwise it opens a new
/// cluster. Each point is finally assigned to its nearest center.
///
/// Deterministic for a fixed seed, independent of the thread count.
ClusterModel mean_shift(const Matrix& points, double bandwidth, std::uint64_t seed);

/// Bandwidth estimate: the mean, over `sample_size` seeded-uniform points
/// drawn without replacement, of the distance to the k-th nearest neighbour
/// among all n points, k = max(1, floor(quantile * n)). The query point
/// itself counts as its own first neighbour.
double estimate_bandwidth(const Matrix& points, double quantile,
                          std::size_t sample_size, std::uint64_t seed);

}  // namespace hyperseg
