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

#include "hyperseg/superpixel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperseg/components.hpp"
#include "hyperseg/error.hpp"
#include "hyperseg/parallel.hpp"

namespace hyperseg {
namespace {

template <typename A, typename B>
double euclidean(std::span<const A> a, std::span<const B> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double t = static_cast<double>(a[j]) - static_cast<double>(b[j]);
    s += t * t;
  }
  return std::sqrt(s);
}

struct Weights {
  double inv_sqrt_l;   // 1 / sqrt(L)
  double clust;        // m_clust / sqrt(L)
  double spatial;      // m / (S sqrt(2))
};

Weights make_weights(std::size_t bands, double m, double m_clust, double interval) {
  const double inv = 1.0 / std::sqrt(static_cast<double>(bands));
  return {inv, m_clust * inv, m / (interval * std::sqrt(2.0))};
}

template <typename T>
double weighted_distance(std::span<const T> spectrum, std::span<const double> cluster, double x,
                         double y, const Superpixel& c, const Weights& w) {
  const double spec = euclidean<T, double>(spectrum, c.mean_spectrum);
  // With a zero weight the term is skipped, which is exactly the two-term
  // hyperspectral SLIC distance.
  const double clust = w.clust == 0.0 ? 0.0 : euclidean<double, double>(cluster, c.mean_cluster_spectrum);
  const double dx = x - c.x;
  const double dy = y - c.y;
  return spec * w.inv_sqrt_l + w.clust * clust + w.spatial * std::sqrt(dx * dx + dy * dy);
}

// Recomputes means of every superpixel from `assignment`. Superpixels with no
// member keep their previous center and report false.
std::vector<bool> update_centers(const AugmentedImage& image,
                                 std::span<const std::int32_t> assignment,
                                 std::vector<Superpixel>& centers) {
  const std::size_t l = image.bands();
  std::vector<std::size_t> count(centers.size(), 0);
  std::vector<Superpixel> acc(centers.size());
  for (auto& a : acc) {
    a.mean_spectrum.assign(l, 0.0);
    a.mean_cluster_spectrum.assign(l, 0.0);
  }
  for (std::size_t p = 0; p < assignment.size(); ++p) {
    const auto k = static_cast<std::size_t>(assignment[p]);
    auto& a = acc[k];
    const auto px = image[p];
    for (std::size_t j = 0; j < l; ++j) {
      a.mean_spectrum[j] += px.spectrum[j];
      a.mean_cluster_spectrum[j] += px.cluster_spectrum[j];
    }
    a.x += px.x;
    a.y += px.y;
    ++count[k];
  }
  std::vector<bool> live(centers.size(), false);
  for (std::size_t k = 0; k < centers.size(); ++k) {
    if (count[k] == 0) continue;
    live[k] = true;
    const double inv = 1.0 / static_cast<double>(count[k]);
    for (std::size_t j = 0; j < l; ++j) {
      acc[k].mean_spectrum[j] *= inv;
      acc[k].mean_cluster_spectrum[j] *= inv;
    }
    acc[k].x *= inv;
    acc[k].y *= inv;
    acc[k].members = std::move(centers[k].members);
    centers[k] = std::move(acc[k]);
  }
  return live;
}

}  // namespace

std::vector<double> AugmentedPixel::feature() const {
  std::vector<double> f;
  f.reserve(spectrum.size() + cluster_spectrum.size() + 2);
  f.insert(f.end(), spectrum.begin(), spectrum.end());
  f.insert(f.end(), cluster_spectrum.begin(), cluster_spectrum.end());
  f.push_back(x);
  f.push_back(y);
  return f;
}

AugmentedImage::AugmentedImage(const HyperCube& cube, const ClusterModel& clusters)
    : height_(cube.height()),
      width_(cube.width()),
      bands_(cube.bands()),
      spectra_(cube.values().begin(), cube.values().end()),
      centers_(clusters.centers),
      assignment_(clusters.assignment) {
  if (assignment_.size() != cube.pixel_count())
    throw ShapeError("augmented image: cluster assignment covers " +
                     std::to_string(assignment_.size()) + " points, cube has " +
                     std::to_string(cube.pixel_count()) + " pixels");
  if (centers_.cols() != bands_)
    throw ShapeError("augmented image: cluster centers have " + std::to_string(centers_.cols()) +
                     " dimensions, cube has " + std::to_string(bands_) + " bands");
  for (auto a : assignment_)
    if (a < 0 || static_cast<std::size_t>(a) >= centers_.rows())
      throw ShapeError("augmented image: assignment refers to a missing cluster");
}

AugmentedImage build_augmented_image(const HyperCube& cube, const ClusterModel& clusters) {
  if (!cube.normalized()) throw InvalidArgument("build_augmented_image: cube must be normalized");
  return AugmentedImage(cube, clusters);
}

LabelMap SuperpixelSet::label_map() const {
  std::vector<std::int32_t> labels(assignment.size());
  std::transform(assignment.begin(), assignment.end(), labels.begin(),
                 [](std::int32_t a) { return a + 1; });
  return LabelMap(height, width, std::move(labels));
}

double augmented_distance(std::span<const float> spectrum,
                          std::span<const double> cluster_spectrum, double x, double y,
                          const Superpixel& center, double m, double m_clust, double interval) {
  return weighted_distance<float>(spectrum, cluster_spectrum, x, y, center,
                                  make_weights(spectrum.size(), m, m_clust, interval));
}

SuperpixelSet slic(const AugmentedImage& image, const SlicParams& params) {
  const std::size_t n = image.size();
  const std::size_t h = image.height();
  const std::size_t w = image.width();
  if (params.superpixels < 1) throw InvalidArgument("slic: K must be at least 1");
  if (params.superpixels > n)
    throw InvalidArgument("slic: K = " + std::to_string(params.superpixels) +
                          " exceeds the pixel count " + std::to_string(n));
  if (!(params.m >= 0.0) || !(params.m_clust >= 0.0))
    throw InvalidArgument("slic: weights must be non-negative");

  const double interval = std::sqrt(static_cast<double>(n) / static_cast<double>(params.superpixels));
  const Weights weights = make_weights(image.bands(), params.m, params.m_clust, interval);

  // Grid seeding with half-step offsets, in pixel-center coordinates.
  std::size_t nx = std::clamp<std::size_t>(static_cast<std::size_t>(std::floor(w / interval)), 1, w);
  std::size_t ny = std::clamp<std::size_t>(static_cast<std::size_t>(std::floor(h / interval)), 1, h);
  while (nx * ny > params.superpixels) {
    if (nx >= ny && nx > 1) --nx;
    else --ny;
  }
  const double step_x = static_cast<double>(w) / static_cast<double>(nx);
  const double step_y = static_cast<double>(h) / static_cast<double>(ny);

  std::vector<Superpixel> centers(nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      auto& c = centers[j * nx + i];
      c.x = (static_cast<double>(i) + 0.5) * step_x - 0.5;
      c.y = (static_cast<double>(j) + 0.5) * step_y - 0.5;
      const auto col = static_cast<std::size_t>(std::floor(c.x + 0.5));
      const auto row = static_cast<std::size_t>(std::floor(c.y + 0.5));
      const auto px = image[row * w + col];
      c.mean_spectrum.assign(px.spectrum.begin(), px.spectrum.end());
      c.mean_cluster_spectrum.assign(px.cluster_spectrum.begin(), px.cluster_spectrum.end());
    }
  }

  SuperpixelSet out;
  out.height = h;
  out.width = w;
  out.interval = interval;

  std::vector<std::int32_t> labels(n, -1);
  std::vector<double> dist(n);
  std::vector<std::vector<std::size_t>> row_centers(h);

  for (std::size_t iter = 0; iter < params.max_iters; ++iter) {
    for (auto& r : row_centers) r.clear();
    for (std::size_t k = 0; k < centers.size(); ++k) {
      const double lo = std::max(0.0, std::ceil(centers[k].y - interval));
      const double hi = std::min(static_cast<double>(h) - 1.0, std::floor(centers[k].y + interval));
      for (auto y = static_cast<std::ptrdiff_t>(lo); y <= static_cast<std::ptrdiff_t>(hi); ++y)
        row_centers[static_cast<std::size_t>(y)].push_back(k);
    }

    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
#pragma omp parallel for schedule(dynamic, 4) num_threads(static_cast<int>(thread_limit()))
    for (std::ptrdiff_t yy = 0; yy < static_cast<std::ptrdiff_t>(h); ++yy) {
      const auto y = static_cast<std::size_t>(yy);
      for (auto k : row_centers[y]) {
        const auto& c = centers[k];
        const double lo = std::max(0.0, std::ceil(c.x - interval));
        const double hi = std::min(static_cast<double>(w) - 1.0, std::floor(c.x + interval));
        for (auto x = static_cast<std::size_t>(lo); x <= static_cast<std::size_t>(hi); ++x) {
          const std::size_t p = y * w + x;
          const auto px = image[p];
          const double d = weighted_distance<float>(px.spectrum, px.cluster_spectrum, px.x, px.y, c, weights);
          if (d < dist[p]) {
            dist[p] = d;
            labels[p] = static_cast<std::int32_t>(k);
          }
        }
      }
    }

    double objective = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      if (std::isinf(dist[p])) {
        // Outside every window: keep the previous label.
        if (labels[p] < 0) throw InternalError("slic: pixel not covered by any seed window");
        const auto px = image[p];
        dist[p] = weighted_distance<float>(px.spectrum, px.cluster_spectrum, px.x, px.y,
                                           centers[static_cast<std::size_t>(labels[p])], weights);
      }
      objective += dist[p];
    }
    out.objective_history.push_back(objective);
    out.iterations = iter + 1;

    const std::vector<Superpixel> previous = centers;
    const auto live = update_centers(image, labels, centers);
    double moved = 0.0;
    std::size_t live_count = 0;
    for (std::size_t k = 0; k < centers.size(); ++k) {
      if (!live[k]) continue;
      moved += weighted_distance<double>(centers[k].mean_spectrum, centers[k].mean_cluster_spectrum,
                                         centers[k].x, centers[k].y, previous[k], weights);
      ++live_count;
    }
    if (live_count > 0 && moved / static_cast<double>(live_count) < params.conv_tol) break;
  }

  out.unconstrained_assignment = labels;
  const auto connected = enforce_connectivity(labels, h, w);

  // Compact away superpixels that ended up empty.
  std::vector<std::int32_t> remap(centers.size(), -1);
  for (auto l : connected) remap[static_cast<std::size_t>(l)] = 0;
  std::int32_t next = 0;
  for (auto& r : remap)
    if (r == 0) r = next++;
  out.assignment.resize(n);
  for (std::size_t p = 0; p < n; ++p)
    out.assignment[p] = remap[static_cast<std::size_t>(connected[p])];

  out.superpixels.assign(static_cast<std::size_t>(next), Superpixel{});
  for (std::size_t p = 0; p < n; ++p)
    out.superpixels[static_cast<std::size_t>(out.assignment[p])].members.push_back(p);
  update_centers(image, out.assignment, out.superpixels);
  return out;
}

Matrix superpixel_features(const SuperpixelSet& set) {
  if (set.superpixels.empty()) return {};
  const std::size_t l = set.superpixels.front().mean_spectrum.size();
  Matrix out(set.size(), l + 2);
  for (std::size_t k = 0; k < set.size(); ++k) {
    const auto& sp = set.superpixels[k];
    auto row = out.row(k);
    std::copy(sp.mean_spectrum.begin(), sp.mean_spectrum.end(), row.begin());
    row[l] = sp.x;
    row[l + 1] = sp.y;
  }
  return out;
}

}  // namespace hyperseg
