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

#include "hyperseg/regionseg.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hyperseg/components.hpp"
#include "hyperseg/error.hpp"
#include "hyperseg/meanshift.hpp"
#include "hyperseg/metrics.hpp"
#include "hyperseg/pca.hpp"

namespace hyperseg {

std::string to_string(FeatureSet f) {
  switch (f) {
    case FeatureSet::spectral: return "spectral";
    case FeatureSet::superpixels: return "superpixels";
    case FeatureSet::spectral_superpixels: return "spectral+superpixels";
  }
  return "?";
}

FeatureSet feature_set_from_string(const std::string& s) {
  if (s == "spectral") return FeatureSet::spectral;
  if (s == "superpixels") return FeatureSet::superpixels;
  if (s == "spectral+superpixels" || s == "combined") return FeatureSet::spectral_superpixels;
  throw InvalidArgument("unknown feature set '" + s + "'");
}

void SegmentationConfig::validate() const {
  if (superpixels && *superpixels < 1) throw InvalidArgument("K must be at least 1");
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  if (!(m >= 0.0) || !(m_clust >= 0.0)) throw InvalidArgument("m and m_clust must be non-negative");
  if (!(pre_bandwidth > 0.0)) throw InvalidArgument("pre-clustering bandwidth must be positive");
  if (seg_bandwidth && !(*seg_bandwidth > 0.0))
    throw InvalidArgument("segmentation bandwidth must be positive");
  if (!(quantile > 0.0 && quantile <= 1.0)) throw InvalidArgument("quantile must lie in (0, 1]");
  if (use_pca && !(variance_threshold > 0.0 && variance_threshold <= 1.0))
    throw InvalidArgument("variance threshold must lie in (0, 1]");
  if (slic_max_iters < 1) throw InvalidArgument("SLIC needs at least one iteration");
}

std::size_t auto_k(std::size_t height, std::size_t width, double alpha) {
  if (height < 1 || width < 1) throw InvalidArgument("auto_k: empty image");
  if (!(alpha > 0.0)) throw InvalidArgument("auto_k: alpha must be positive");
  const double ratio = static_cast<double>(std::min(height, width)) / alpha;
  const auto k = static_cast<std::size_t>(std::ceil(ratio)) * 100;
  return std::clamp<std::size_t>(k, 300, 2000);
}

Matrix assemble_features(const HyperCube& cube, const SuperpixelSet& superpixels,
                         bool scale_positions) {
  if (!cube.normalized()) throw InvalidArgument("assemble_features: cube must be normalized");
  if (superpixels.height != cube.height() || superpixels.width != cube.width() ||
      superpixels.assignment.size() != cube.pixel_count())
    throw ShapeError("assemble_features: superpixels do not partition this cube");
  const std::size_t l = cube.bands();
  if (!superpixels.superpixels.empty() && superpixels.superpixels.front().mean_spectrum.size() != l)
    throw ShapeError("assemble_features: superpixel spectra have the wrong band count");

  const double scale =
      scale_positions ? 1.0 / static_cast<double>(std::max(cube.height(), cube.width())) : 1.0;
  Matrix out(cube.pixel_count(), 2 * l + 2);
  for (std::size_t p = 0; p < cube.pixel_count(); ++p) {
    const auto& sp = superpixels.superpixels[static_cast<std::size_t>(superpixels.assignment[p])];
    auto row = out.row(p);
    const auto spec = cube.spectrum(p);
    std::copy(spec.begin(), spec.end(), row.begin());
    std::copy(sp.mean_spectrum.begin(), sp.mean_spectrum.end(), row.begin() + static_cast<std::ptrdiff_t>(l));
    row[2 * l] = sp.x * scale;
    row[2 * l + 1] = sp.y * scale;
  }
  return out;
}

std::vector<std::int32_t> majority_vote(std::span<const std::int32_t> labels,
                                        const SuperpixelSet& superpixels) {
  if (labels.size() != superpixels.assignment.size())
    throw ShapeError("majority_vote: label count differs from pixel count");
  std::vector<std::int32_t> out(labels.begin(), labels.end());
  std::map<std::int32_t, std::size_t> votes;
  for (const auto& sp : superpixels.superpixels) {
    if (sp.members.empty()) continue;
    votes.clear();
    for (auto p : sp.members) ++votes[labels[p]];
    auto best = votes.begin();
    for (auto it = votes.begin(); it != votes.end(); ++it)
      if (it->second > best->second) best = it;
    for (auto p : sp.members) out[p] = best->first;
  }
  return out;
}

std::vector<std::int32_t> renumber_by_area(std::span<const std::int32_t> labels) {
  std::map<std::int32_t, std::pair<std::size_t, std::size_t>> stats;  // area, first pixel
  for (std::size_t p = 0; p < labels.size(); ++p) {
    auto [it, fresh] = stats.try_emplace(labels[p], 0, p);
    ++it->second.first;
  }
  std::vector<std::pair<std::int32_t, std::pair<std::size_t, std::size_t>>> order(stats.begin(),
                                                                                  stats.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second.first != b.second.first) return a.second.first > b.second.first;
    return a.second.second < b.second.second;
  });
  std::map<std::int32_t, std::int32_t> remap;
  for (std::size_t i = 0; i < order.size(); ++i)
    remap[order[i].first] = static_cast<std::int32_t>(i + 1);
  std::vector<std::int32_t> out(labels.size());
  for (std::size_t p = 0; p < labels.size(); ++p) out[p] = remap[labels[p]];
  return out;
}

namespace {

Matrix spectral_block(const HyperCube& cube, const SegmentationConfig& config) {
  Matrix spectra = spectra_matrix(cube);
  if (!config.use_pca) return spectra;
  return apply_pca(spectra, fit_pca(spectra, config.variance_threshold));
}

// Superpixel mean spectra, K x L, optionally reduced by their own PCA.
Matrix center_block(const SuperpixelSet& sp, const SegmentationConfig& config) {
  const std::size_t l = sp.superpixels.front().mean_spectrum.size();
  Matrix centers(sp.size(), l);
  for (std::size_t k = 0; k < sp.size(); ++k) {
    const auto& s = sp.superpixels[k].mean_spectrum;
    std::copy(s.begin(), s.end(), centers.row(k).begin());
  }
  if (!config.use_pca) return centers;
  return apply_pca(centers, fit_pca(centers, config.variance_threshold));
}

}  // namespace

PreparedScene prepare_scene(const HyperCube& cube, const SegmentationConfig& config) {
  config.validate();
  if (!cube.normalized()) throw InvalidArgument("segment: cube must be normalized");

  PreparedScene scene;
  scene.height = cube.height();
  scene.width = cube.width();
  scene.bands = cube.bands();
  const std::size_t n = cube.pixel_count();

  scene.pre_clusters = mean_shift(spectra_matrix(cube), config.pre_bandwidth, config.seed);
  const AugmentedImage augmented = build_augmented_image(cube, scene.pre_clusters);

  std::size_t k = config.superpixels ? *config.superpixels
                                     : std::min(auto_k(cube.height(), cube.width(), config.alpha), n);
  scene.resolved_superpixels = k;
  SlicParams params;
  params.superpixels = k;
  params.m = config.m;
  params.m_clust = config.m_clust;
  params.max_iters = config.slic_max_iters;
  params.conv_tol = config.slic_conv_tol;
  scene.superpixels = slic(augmented, params);

  const double pos_scale =
      config.scale_positions ? 1.0 / static_cast<double>(std::max(cube.height(), cube.width())) : 1.0;
  const auto& sp = scene.superpixels;

  switch (config.features) {
    case FeatureSet::spectral: {
      scene.features = spectral_block(cube, config);
      scene.spectral_dims = scene.features.cols();
      break;
    }
    case FeatureSet::superpixels: {
      const Matrix centers = center_block(sp, config);
      scene.superpixel_dims = centers.cols();
      scene.features = Matrix(sp.size(), centers.cols() + 2);
      for (std::size_t s = 0; s < sp.size(); ++s) {
        auto row = scene.features.row(s);
        std::copy(centers.row(s).begin(), centers.row(s).end(), row.begin());
        row[centers.cols()] = sp.superpixels[s].x * pos_scale;
        row[centers.cols() + 1] = sp.superpixels[s].y * pos_scale;
      }
      break;
    }
    case FeatureSet::spectral_superpixels: {
      if (!config.use_pca) {
        scene.features = assemble_features(cube, sp, config.scale_positions);
        scene.spectral_dims = scene.bands;
        scene.superpixel_dims = scene.bands;
        break;
      }
      const Matrix spectral = spectral_block(cube, config);
      const Matrix centers = center_block(sp, config);
      scene.spectral_dims = spectral.cols();
      scene.superpixel_dims = centers.cols();
      const std::size_t a = spectral.cols();
      const std::size_t b = centers.cols();
      scene.features = Matrix(n, a + b + 2);
      for (std::size_t p = 0; p < n; ++p) {
        const auto s = static_cast<std::size_t>(sp.assignment[p]);
        auto row = scene.features.row(p);
        std::copy(spectral.row(p).begin(), spectral.row(p).end(), row.begin());
        std::copy(centers.row(s).begin(), centers.row(s).end(), row.begin() + static_cast<std::ptrdiff_t>(a));
        row[a + b] = sp.superpixels[s].x * pos_scale;
        row[a + b + 1] = sp.superpixels[s].y * pos_scale;
      }
      break;
    }
  }
  return scene;
}

double auto_bandwidth(const PreparedScene& scene, const SegmentationConfig& config) {
  return estimate_bandwidth(scene.features, config.quantile, config.bandwidth_samples, config.seed);
}

SegmentationResult segment_prepared(const PreparedScene& scene, const SegmentationConfig& config,
                                    double seg_bandwidth) {
  const std::size_t n = scene.height * scene.width;
  const auto& sp = scene.superpixels;
  const ClusterModel clusters = mean_shift(scene.features, seg_bandwidth, config.seed);

  std::vector<std::int32_t> labels(n);
  if (config.features == FeatureSet::superpixels) {
    for (std::size_t p = 0; p < n; ++p)
      labels[p] = clusters.assignment[static_cast<std::size_t>(sp.assignment[p])];
  } else {
    labels = clusters.assignment;
  }
  if (config.features == FeatureSet::spectral_superpixels) labels = majority_vote(labels, sp);

  SegmentationResult result;
  result.seg_bandwidth = seg_bandwidth;
  result.region_clusters = clusters.cluster_count();
  result.small_region_threshold =
      config.small_region_threshold
          ? *config.small_region_threshold
          : static_cast<std::size_t>(std::ceil(sp.interval * sp.interval / 4.0 - 1e-9));
  labels = remove_small_regions(labels, scene.height, scene.width, result.small_region_threshold);
  result.labels = LabelMap(scene.height, scene.width, renumber_by_area(labels));
  return result;
}

SegmentationResult segment(const HyperCube& cube, const SegmentationConfig& config) {
  const PreparedScene scene = prepare_scene(cube, config);
  const double bw = config.seg_bandwidth ? *config.seg_bandwidth : auto_bandwidth(scene, config);
  return segment_prepared(scene, config, bw);
}

std::vector<double> bandwidth_ladder(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0)
    throw InvalidArgument("bandwidth_ladder: need 0 < lo <= hi and count >= 1");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double ratio = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo * std::exp(ratio * static_cast<double>(i));
  out.back() = hi;
  return out;
}

std::vector<double> default_oracle_ladder() {
  return bandwidth_ladder(0.1, 1.0, 8);
}

OracleSearch oracle_search(const PreparedScene& scene, const SegmentationConfig& config,
                           const LabelMap& truth, const std::vector<double>& ladder) {
  if (ladder.empty()) throw InvalidArgument("oracle_search: empty bandwidth ladder");
  if (truth.height() != scene.height || truth.width() != scene.width)
    throw ShapeError("oracle_search: ground truth does not match the cube");
  OracleSearch search;
  bool have = false;
  for (double bw : ladder) {
    SegmentationResult r = segment_prepared(scene, config, bw);
    const double score = nmi(r.labels, truth);
    search.trials.push_back({bw, score, r.labels.count_labels()});
    const auto& best = have ? search.trials[search.best] : search.trials.back();
    if (!have || score > best.nmi || (score == best.nmi && bw < best.bandwidth)) {
      search.best = search.trials.size() - 1;
      search.result = std::move(r);
      have = true;
    }
  }
  return search;
}

}  // namespace hyperseg
