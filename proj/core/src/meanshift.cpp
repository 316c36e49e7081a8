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

#include "hyperseg/meanshift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "hyperseg/error.hpp"
#include "hyperseg/parallel.hpp"
#include "random.hpp"

namespace hyperseg {
namespace {

// Window sums are accumulated in fixed blocks of sorted positions and the
// block partials are combined in order, so the floating-point result does
// not depend on how many threads processed the blocks.
constexpr std::size_t kBlock = 256;
constexpr std::size_t kMaxClimbSteps = 1000;

void check_points(const Matrix& points) {
  if (points.rows() == 0 || points.cols() == 0) throw InvalidArgument("mean_shift: no points");
  const auto data = points.data();
  if (!std::all_of(data.begin(), data.end(), [](double v) { return std::isfinite(v); }))
    throw DegenerateInput("mean_shift: non-finite input values");
}

// Leading principal direction of the point cloud by power iteration. Any
// unit vector keeps the pruning exact; a good one keeps it fast.
std::vector<double> pivot_direction(const Matrix& points) {
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = points.row(i);
    for (std::size_t j = 0; j < d; ++j) mean[j] += r[j];
  }
  for (auto& v : mean) v /= static_cast<double>(n);

  std::vector<double> dir(d, 1.0 / std::sqrt(static_cast<double>(d)));
  std::vector<double> next(d);
  // Subsample large inputs; only the direction matters.
  const std::size_t stride = std::max<std::size_t>(1, n / 20000);
  for (int iter = 0; iter < 30; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; i += stride) {
      const auto r = points.row(i);
      double p = 0.0;
      for (std::size_t j = 0; j < d; ++j) p += (r[j] - mean[j]) * dir[j];
      for (std::size_t j = 0; j < d; ++j) next[j] += p * (r[j] - mean[j]);
    }
    const double norm = std::sqrt(std::inner_product(next.begin(), next.end(), next.begin(), 0.0));
    if (!(norm > 0.0)) {
      std::fill(dir.begin(), dir.end(), 0.0);
      dir[0] = 1.0;
      return dir;
    }
    double change = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double v = next[j] / norm;
      change += (v - dir[j]) * (v - dir[j]);
      dir[j] = v;
    }
    if (change < 1e-20) break;
  }
  return dir;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Points reordered by their projection on a pivot direction. The projection
// is 1-Lipschitz, so a radius-r ball around c only contains points whose
// projection lies within r of c's.
class ProjectedIndex {
 public:
  explicit ProjectedIndex(const Matrix& points) : dir_(pivot_direction(points)) {
    const std::size_t n = points.rows();
    std::vector<double> raw(n);
    for (std::size_t i = 0; i < n; ++i) raw[i] = dot(points.row(i), dir_);
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });
    sorted_ = Matrix(n, points.cols());
    proj_.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
      const auto src = points.row(order_[s]);
      std::copy(src.begin(), src.end(), sorted_.row(s).begin());
      proj_[s] = raw[order_[s]];
    }
  }

  double project(std::span<const double> v) const { return dot(v, dir_); }

  // Sorted positions whose projection lies in [c - r, c + r].
  std::pair<std::size_t, std::size_t> range(double c, double r) const {
    const auto lo = std::lower_bound(proj_.begin(), proj_.end(), c - r);
    const auto hi = std::upper_bound(lo, proj_.end(), c + r);
    return {static_cast<std::size_t>(lo - proj_.begin()),
            static_cast<std::size_t>(hi - proj_.begin())};
  }

  const Matrix& sorted() const { return sorted_; }
  std::size_t original(std::size_t s) const { return order_[s]; }
  std::size_t size() const { return order_.size(); }

 private:
  std::vector<double> dir_;
  std::vector<std::size_t> order_;
  std::vector<double> proj_;
  Matrix sorted_;
};

// Squared distance with early exit once `limit` is exceeded.
double bounded_sq_distance(std::span<const double> a, std::span<const double> b, double limit) {
  double s = 0.0;
  std::size_t j = 0;
  const std::size_t d = a.size();
  for (; j + 8 <= d; j += 8) {
    for (std::size_t k = j; k < j + 8; ++k) {
      const double t = a[k] - b[k];
      s += t * t;
    }
    if (s >= limit) return s;
  }
  for (; j < d; ++j) {
    const double t = a[j] - b[j];
    s += t * t;
  }
  return s;
}

struct WindowStats {
  std::vector<double> sum;
  std::size_t count = 0;
  std::vector<std::size_t> members;  // sorted positions inside the window
};

WindowStats window_stats(const ProjectedIndex& index, std::span<const double> center,
                         double bandwidth) {
  const double limit = bandwidth * bandwidth;
  const std::size_t d = center.size();
  const auto [lo, hi] = index.range(index.project(center), bandwidth);
  const std::size_t blocks = (hi - lo + kBlock - 1) / kBlock;

  std::vector<double> partial(blocks * d, 0.0);
  std::vector<std::vector<std::size_t>> inside(blocks);
  const Matrix& sorted = index.sorted();

#pragma omp parallel for schedule(dynamic, 4) num_threads(static_cast<int>(thread_limit())) if (blocks > 8)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t begin = lo + static_cast<std::size_t>(b) * kBlock;
    const std::size_t end = std::min(hi, begin + kBlock);
    double* acc = partial.data() + static_cast<std::size_t>(b) * d;
    auto& mine = inside[static_cast<std::size_t>(b)];
    for (std::size_t s = begin; s < end; ++s) {
      const auto p = sorted.row(s);
      if (bounded_sq_distance(p, center, limit) < limit) {
        for (std::size_t j = 0; j < d; ++j) acc[j] += p[j];
        mine.push_back(s);
      }
    }
  }

  WindowStats w;
  w.sum.assign(d, 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    if (inside[b].empty()) continue;
    const double* acc = partial.data() + b * d;
    for (std::size_t j = 0; j < d; ++j) w.sum[j] += acc[j];
    w.count += inside[b].size();
    w.members.insert(w.members.end(), inside[b].begin(), inside[b].end());
  }
  return w;
}

// Pool of unvisited point indices with O(1) removal.
class UnvisitedPool {
 public:
  explicit UnvisitedPool(std::size_t n) : items_(n), where_(n) {
    std::iota(items_.begin(), items_.end(), std::size_t{0});
    std::iota(where_.begin(), where_.end(), std::size_t{0});
  }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  std::size_t at(std::size_t k) const { return items_[k]; }
  void remove(std::size_t point) {
    const std::size_t k = where_[point];
    if (k == kGone) return;
    const std::size_t last = items_.back();
    items_[k] = last;
    where_[last] = k;
    items_.pop_back();
    where_[point] = kGone;
  }

 private:
  static constexpr std::size_t kGone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> items_;
  std::vector<std::size_t> where_;
};

struct ModeSet {
  std::vector<std::vector<double>> centers;
  std::vector<double> proj;

  // Index of the first center closer than `radius` to v, if any.
  std::ptrdiff_t find_near(std::span<const double> v, double v_proj, double radius,
                           std::ptrdiff_t skip = -1) const {
    const double limit = radius * radius;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      if (static_cast<std::ptrdiff_t>(c) == skip) continue;
      if (std::abs(proj[c] - v_proj) >= radius) continue;
      if (bounded_sq_distance(centers[c], v, limit) < limit) return static_cast<std::ptrdiff_t>(c);
    }
    return -1;
  }
};

}  // namespace

ClusterModel mean_shift(const Matrix& points, double bandwidth, std::uint64_t seed) {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
    throw InvalidArgument("mean_shift: bandwidth must be positive");
  check_points(points);

  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  const double stop = bandwidth * 1e-3;
  const double merge_radius = bandwidth / 2.0;

  const ProjectedIndex index(points);
  UnvisitedPool pool(n);
  std::mt19937_64 rng(seed);
  ModeSet modes;

  std::vector<double> mean(d);
  std::vector<double> next(d);
  while (!pool.empty()) {
    const std::size_t start = pool.at(detail::uniform_index(rng, pool.size()));
    const auto sp = points.row(start);
    std::copy(sp.begin(), sp.end(), mean.begin());

    for (std::size_t step = 0; step < kMaxClimbSteps; ++step) {
      WindowStats w = window_stats(index, mean, bandwidth);
      for (auto s : w.members) pool.remove(index.original(s));
      if (w.count == 0) break;
      for (std::size_t j = 0; j < d; ++j) next[j] = w.sum[j] / static_cast<double>(w.count);
      const double shift = std::sqrt(squared_distance(next, mean));
      mean.swap(next);
      if (shift < stop) break;
    }
    // A climb that starts on a point always removes it; guard regardless.
    pool.remove(start);

    // Merge into an existing mode, cascading while the averaged center lands
    // near another one.
    std::ptrdiff_t target = modes.find_near(mean, index.project(mean), merge_radius);
    if (target < 0) {
      modes.centers.push_back(mean);
      modes.proj.push_back(index.project(mean));
      continue;
    }
    while (target >= 0) {
      auto& c = modes.centers[static_cast<std::size_t>(target)];
      for (std::size_t j = 0; j < d; ++j) c[j] = 0.5 * (c[j] + mean[j]);
      modes.proj[static_cast<std::size_t>(target)] = index.project(c);
      const std::ptrdiff_t other =
          modes.find_near(c, modes.proj[static_cast<std::size_t>(target)], merge_radius, target);
      if (other < 0) break;
      // Fold `target` into `other` and continue from the survivor.
      mean = c;
      const std::size_t keep = static_cast<std::size_t>(std::min(target, other));
      const std::size_t drop = static_cast<std::size_t>(std::max(target, other));
      modes.centers[keep] = modes.centers[static_cast<std::size_t>(other)];
      modes.proj[keep] = modes.proj[static_cast<std::size_t>(other)];
      modes.centers.erase(modes.centers.begin() + static_cast<std::ptrdiff_t>(drop));
      modes.proj.erase(modes.proj.begin() + static_cast<std::ptrdiff_t>(drop));
      target = static_cast<std::ptrdiff_t>(keep);
    }
  }

  // Nearest-center assignment. Centers are scanned outward from the point's
  // projection; the scan stops once the projection gap alone exceeds the
  // best distance found. Ties go to the earlier mode.
  const std::size_t u = modes.centers.size();
  std::vector<std::size_t> by_proj(u);
  std::iota(by_proj.begin(), by_proj.end(), std::size_t{0});
  std::stable_sort(by_proj.begin(), by_proj.end(),
                   [&](std::size_t a, std::size_t b) { return modes.proj[a] < modes.proj[b]; });
  std::vector<double> sorted_proj(u);
  for (std::size_t k = 0; k < u; ++k) sorted_proj[k] = modes.proj[by_proj[k]];

  std::vector<std::int32_t> provisional(n);
#pragma omp parallel for schedule(static) num_threads(static_cast<int>(thread_limit()))
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const auto p = points.row(i);
    const double pp = index.project(p);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_c = 0;
    auto consider = [&](std::size_t c) {
      const double dist = bounded_sq_distance(modes.centers[c], p, best * (1.0 + 1e-12));
      if (dist < best || (dist == best && c < best_c)) {
        best = dist;
        best_c = c;
      }
    };
    const auto mid = static_cast<std::size_t>(
        std::lower_bound(sorted_proj.begin(), sorted_proj.end(), pp) - sorted_proj.begin());
    std::size_t up = mid;
    std::size_t down = mid;
    bool up_open = up < u;
    bool down_open = down > 0;
    while (up_open || down_open) {
      if (up_open) {
        const double gap = sorted_proj[up] - pp;
        if (gap * gap > best) {
          up_open = false;
        } else {
          consider(by_proj[up]);
          up_open = ++up < u;
        }
      }
      if (down_open) {
        const double gap = pp - sorted_proj[down - 1];
        if (gap * gap > best) {
          down_open = false;
        } else {
          consider(by_proj[down - 1]);
          down_open = --down > 0;
        }
      }
    }
    provisional[i] = static_cast<std::int32_t>(best_c);
  }

  // Canonical order: descending size, then smallest member index. Modes that
  // attracted no point are dropped.
  std::vector<std::size_t> count(u, 0);
  std::vector<std::size_t> first(u, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<std::size_t>(provisional[i]);
    if (count[c]++ == 0) first[c] = i;
  }
  std::vector<std::size_t> live;
  for (std::size_t c = 0; c < u; ++c)
    if (count[c] > 0) live.push_back(c);
  std::sort(live.begin(), live.end(), [&](std::size_t a, std::size_t b) {
    if (count[a] != count[b]) return count[a] > count[b];
    return first[a] < first[b];
  });
  std::vector<std::int32_t> rank(u, -1);
  for (std::size_t k = 0; k < live.size(); ++k) rank[live[k]] = static_cast<std::int32_t>(k);

  ClusterModel model;
  model.bandwidth = bandwidth;
  model.centers = Matrix(live.size(), d);
  model.sizes.resize(live.size());
  for (std::size_t k = 0; k < live.size(); ++k) {
    std::copy(modes.centers[live[k]].begin(), modes.centers[live[k]].end(),
              model.centers.row(k).begin());
    model.sizes[k] = count[live[k]];
  }
  model.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    model.assignment[i] = rank[static_cast<std::size_t>(provisional[i])];
  return model;
}

double estimate_bandwidth(const Matrix& points, double quantile, std::size_t sample_size,
                          std::uint64_t seed) {
  if (!(quantile > 0.0 && quantile <= 1.0))
    throw InvalidArgument("estimate_bandwidth: quantile must lie in (0, 1]");
  if (points.rows() < 2) throw InvalidArgument("estimate_bandwidth: need at least two points");
  check_points(points);

  const std::size_t n = points.rows();
  const std::size_t k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(quantile * static_cast<double>(n))));

  std::vector<std::size_t> sample(n);
  std::iota(sample.begin(), sample.end(), std::size_t{0});
  if (sample_size > 0 && sample_size < n) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < sample_size; ++i) {
      const std::size_t j = i + detail::uniform_index(rng, n - i);
      std::swap(sample[i], sample[j]);
    }
    sample.resize(sample_size);
  }

  std::vector<double> kth(sample.size());
#pragma omp parallel for schedule(dynamic) num_threads(static_cast<int>(thread_limit()))
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(sample.size()); ++si) {
    const auto q = points.row(sample[static_cast<std::size_t>(si)]);
    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) dist[i] = squared_distance(q, points.row(i));
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1), dist.end());
    kth[static_cast<std::size_t>(si)] = std::sqrt(dist[k - 1]);
  }
  return std::accumulate(kth.begin(), kth.end(), 0.0) / static_cast<double>(kth.size());
}

}  // namespace hyperseg
