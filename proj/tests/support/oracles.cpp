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

#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace hyperseg::testing {

double brute_force_ari(const std::vector<std::int32_t>& pred,
                       const std::vector<std::int32_t>& truth) {
  std::vector<std::size_t> fg;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (truth[i] != 0) fg.push_back(i);
  // a: same/same, b: diff/diff, c: same pred only, d: same truth only
  double a = 0, b = 0, c = 0, d = 0;
  for (std::size_t x = 0; x < fg.size(); ++x) {
    for (std::size_t y = x + 1; y < fg.size(); ++y) {
      const bool sp = pred[fg[x]] == pred[fg[y]];
      const bool st = truth[fg[x]] == truth[fg[y]];
      if (sp && st) a += 1;
      else if (!sp && !st) b += 1;
      else if (sp) c += 1;
      else d += 1;
    }
  }
  const double pairs = a + b + c + d;
  if (pairs == 0) return 1.0;  // a single foreground pixel: both partitions agree trivially
  const double expected = (a + c) * (a + d) / pairs;
  const double maximum = 0.5 * ((a + c) + (a + d));
  if (maximum == expected) return 1.0;
  return (a - expected) / (maximum - expected);
}

namespace {

double entropy(const std::map<std::int32_t, double>& counts, double n) {
  double h = 0.0;
  for (const auto& [k, c] : counts) {
    const double p = c / n;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double direct_nmi(const std::vector<std::int32_t>& pred,
                  const std::vector<std::int32_t>& truth) {
  std::map<std::int32_t, double> pc, tc;
  std::map<std::pair<std::int32_t, std::int32_t>, double> joint;
  double n = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == 0) continue;
    pc[pred[i]] += 1;
    tc[truth[i]] += 1;
    joint[{pred[i], truth[i]}] += 1;
    n += 1;
  }
  if (pc.size() == 1 || tc.size() == 1) return pc.size() == tc.size() ? 1.0 : 0.0;
  double mi = 0.0;
  for (const auto& [key, c] : joint) {
    const double pij = c / n;
    mi += pij * std::log(pij / ((pc[key.first] / n) * (tc[key.second] / n)));
  }
  return mi / std::sqrt(entropy(pc, n) * entropy(tc, n));
}

double direct_ue(const std::vector<std::int32_t>& superpixels,
                 const std::vector<std::int32_t>& truth, double b_fraction) {
  std::map<std::int32_t, double> size;
  std::map<std::pair<std::int32_t, std::int32_t>, double> overlap;
  double n = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == 0) continue;
    size[superpixels[i]] += 1;
    overlap[{truth[i], superpixels[i]}] += 1;
    n += 1;
  }
  double sum = 0.0;
  for (const auto& [key, c] : overlap)
    if (c > b_fraction * size[key.second]) sum += size[key.second];
  return (sum - n) / n;
}

double exhaustive_knn_bandwidth(const Matrix& points, double quantile) {
  const std::size_t n = points.rows();
  const std::size_t k = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(quantile * n)));
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> d;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < points.cols(); ++c) {
        const double diff = points(i, c) - points(j, c);
        s += diff * diff;
      }
      d.push_back(std::sqrt(s));
    }
    std::sort(d.begin(), d.end());
    total += d[k - 1];
  }
  return total / static_cast<double>(n);
}

std::vector<double> climb_mode(const Matrix& points, std::vector<double> start, double bandwidth) {
  std::vector<double> x = std::move(start);
  for (int step = 0; step < 10000; ++step) {
    std::vector<double> sum(points.cols(), 0.0);
    double count = 0;
    for (std::size_t i = 0; i < points.rows(); ++i) {
      double s = 0.0;
      for (std::size_t c = 0; c < points.cols(); ++c) s += (points(i, c) - x[c]) * (points(i, c) - x[c]);
      if (s < bandwidth * bandwidth) {
        for (std::size_t c = 0; c < points.cols(); ++c) sum[c] += points(i, c);
        count += 1;
      }
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < points.cols(); ++c) {
      const double next = sum[c] / count;
      shift += (next - x[c]) * (next - x[c]);
      x[c] = next;
    }
    if (std::sqrt(shift) < bandwidth * 1e-3) break;
  }
  return x;
}

}  // namespace hyperseg::testing
