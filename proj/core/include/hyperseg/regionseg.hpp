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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperseg/cube.hpp"
#include "hyperseg/matrix.hpp"
#include "hyperseg/superpixel.hpp"

namespace hyperseg {

/// Which per-pixel description the second-stage mean-shift clusters.
enum class FeatureSet {
  spectral,              // P_i
  superpixels,           // C_k, clustered once per superpixel
  spectral_superpixels,  // <P_i, C_k, x_k, y_k>
};

std::string to_string(FeatureSet f);
FeatureSet feature_set_from_string(const std::string& s);

struct SegmentationConfig {
  std::optional<std::size_t> superpixels;  // K; empty = auto_k(H, W, alpha)
  double alpha = 60.0;
  double m = 0.4;
  double m_clust = 0.8;
  double pre_bandwidth = 0.1;
  std::optional<double> seg_bandwidth;     // empty = estimate_bandwidth
  double quantile = 0.3;
  std::size_t bandwidth_samples = 500;
  std::optional<std::size_t> small_region_threshold;  // empty = ceil(S^2 / 4)
  std::uint64_t seed = 0;
  bool use_pca = false;
  double variance_threshold = 0.999;
  bool scale_positions = true;             // divide (x_k, y_k) by max(H, W)
  FeatureSet features = FeatureSet::spectral_superpixels;
  std::size_t slic_max_iters = 10;
  double slic_conv_tol = 1e-3;

  /// Throws InvalidArgument when a field is outside its domain.
  void validate() const;
};

/// K = ceil(min(H, W) / alpha) * 100, clamped to [300, 2000].
std::size_t auto_k(std::size_t height, std::size_t width, double alpha = 60.0);

/// Per-pixel <P_i, C_k, x_k, y_k> where k is the pixel's superpixel,
/// N x (2L + 2). With `scale_positions` the coordinates are divided by
/// max(H, W).
Matrix assemble_features(const HyperCube& cube, const SuperpixelSet& superpixels,
                         bool scale_positions = true);

/// Every pixel of a superpixel takes the superpixel's most frequent label
/// (smaller label on ties).
std::vector<std::int32_t> majority_vote(std::span<const std::int32_t> labels,
                                        const SuperpixelSet& superpixels);

/// Relabels to 1..C by descending area, ties by first raster occurrence.
std::vector<std::int32_t> renumber_by_area(std::span<const std::int32_t> labels);

/// Output of the first stage, shared by every second-stage bandwidth.
struct PreparedScene {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t bands = 0;
  ClusterModel pre_clusters;
  SuperpixelSet superpixels;
  Matrix features;  // rows are pixels, or superpixels for FeatureSet::superpixels
  std::size_t resolved_superpixels = 0;
  std::size_t spectral_dims = 0;    // after PCA when enabled
  std::size_t superpixel_dims = 0;  // after PCA when enabled
};

struct SegmentationResult {
  LabelMap labels;
  double seg_bandwidth = 0.0;
  std::size_t small_region_threshold = 0;
  std::size_t region_clusters = 0;  // mean-shift clusters before voting
};

/// Stage one: pre-clustering, augmented SLIC and feature assembly.
PreparedScene prepare_scene(const HyperCube& cube, const SegmentationConfig& config);

/// Stage two for one bandwidth: mean-shift, majority voting, small-region
/// cleanup and renumbering.
SegmentationResult segment_prepared(const PreparedScene& scene,
                                    const SegmentationConfig& config,
                                    double seg_bandwidth);

/// Bandwidth used by segment() when config.seg_bandwidth is empty.
double auto_bandwidth(const PreparedScene& scene, const SegmentationConfig& config);

/// Full pipeline on a normalized cube.
SegmentationResult segment(const HyperCube& cube, const SegmentationConfig& config);

/// Geometric ladder of `count` bandwidths from `lo` to `hi` inclusive.
std::vector<double> bandwidth_ladder(double lo, double hi, std::size_t count);

/// Ladder used by the oracle mode when none is supplied: 8 geometric steps
/// from 0.1 to 1.0, shared by every feature set.
std::vector<double> default_oracle_ladder();

struct OracleTrial {
  double bandwidth = 0.0;
  double nmi = 0.0;
  std::size_t segments = 0;
};

struct OracleSearch {
  std::vector<OracleTrial> trials;
  std::size_t best = 0;  // index into trials
  SegmentationResult result;
};

/// Ground-truth-tuned variant: runs stage two for every bandwidth of the
/// ladder and keeps the one with the highest NMI against `truth`
/// (smaller bandwidth on ties).
OracleSearch oracle_search(const PreparedScene& scene, const SegmentationConfig& config,
                           const LabelMap& truth, const std::vector<double>& ladder);

}  // namespace hyperseg
