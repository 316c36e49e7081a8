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

#include "hyperseg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hyperseg/error.hpp"

namespace hyperseg {
namespace {

void check_pair(const LabelMap& pred, const LabelMap& truth) {
  if (pred.height() != truth.height() || pred.width() != truth.width())
    throw ShapeError("label maps differ in size: " + std::to_string(pred.height()) + "x" +
                     std::to_string(pred.width()) + " vs " + std::to_string(truth.height()) + "x" +
                     std::to_string(truth.width()));
}

double choose2(std::int64_t n) { return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1); }

}  // namespace

ContingencyTable contingency(const LabelMap& pred, const LabelMap& truth) {
  check_pair(pred, truth);
  std::map<std::int32_t, std::size_t> rows;
  std::map<std::int32_t, std::size_t> cols;
  for (std::size_t p = 0; p < truth.size(); ++p) {
    if (truth[p] == 0) continue;
    rows.emplace(pred[p], 0);
    cols.emplace(truth[p], 0);
  }
  if (cols.empty()) throw DegenerateInput("ground truth has no foreground pixel");

  ContingencyTable t;
  for (auto& [label, idx] : rows) {
    idx = t.cluster_labels.size();
    t.cluster_labels.push_back(label);
  }
  for (auto& [label, idx] : cols) {
    idx = t.class_labels.size();
    t.class_labels.push_back(label);
  }
  t.counts.assign(t.clusters() * t.classes(), 0);
  t.row_sums.assign(t.clusters(), 0);
  t.col_sums.assign(t.classes(), 0);
  for (std::size_t p = 0; p < truth.size(); ++p) {
    if (truth[p] == 0) continue;
    const std::size_t i = rows[pred[p]];
    const std::size_t j = cols[truth[p]];
    ++t.counts[i * t.classes() + j];
    ++t.row_sums[i];
    ++t.col_sums[j];
    ++t.total;
  }
  return t;
}

double undersegmentation_error(const LabelMap& superpixels, const LabelMap& truth,
                               double b_fraction) {
  if (!(b_fraction >= 0.0 && b_fraction < 1.0))
    throw InvalidArgument("undersegmentation_error: b_fraction must lie in [0, 1)");
  const ContingencyTable t = contingency(superpixels, truth);
  double leaked = 0.0;
  for (std::size_t j = 0; j < t.classes(); ++j) {
    for (std::size_t i = 0; i < t.clusters(); ++i) {
      const auto overlap = static_cast<double>(t.at(i, j));
      if (overlap > b_fraction * static_cast<double>(t.row_sums[i]))
        leaked += static_cast<double>(t.row_sums[i]);
    }
  }
  const auto n = static_cast<double>(t.total);
  return (leaked - n) / n;
}

double nmi(const ContingencyTable& t) {
  if (t.clusters() == 1 || t.classes() == 1) {
    // Zero entropy on at least one side.
    return (t.clusters() == 1 && t.classes() == 1) ? 1.0 : 0.0;
  }
  // One-to-one tables are identical partitions up to relabelling.
  if (t.clusters() == t.classes()) {
    std::size_t nonzero = 0;
    for (auto v : t.counts) nonzero += v != 0;
    if (nonzero == t.clusters()) {
      bool one_to_one = true;
      for (std::size_t i = 0; i < t.clusters() && one_to_one; ++i) {
        std::size_t in_row = 0;
        for (std::size_t j = 0; j < t.classes(); ++j) in_row += t.at(i, j) != 0;
        one_to_one = in_row == 1;
      }
      if (one_to_one) return 1.0;
    }
  }

  const auto n = static_cast<double>(t.total);
  auto entropy = [n](const std::vector<std::int64_t>& sums) {
    double h = 0.0;
    for (auto a : sums) {
      const auto v = static_cast<double>(a);
      h += v / n * std::log(n / v);
    }
    return h;
  };
  const double h_pred = entropy(t.row_sums);
  const double h_true = entropy(t.col_sums);
  double mi = 0.0;
  for (std::size_t i = 0; i < t.clusters(); ++i) {
    for (std::size_t j = 0; j < t.classes(); ++j) {
      const auto nij = t.at(i, j);
      if (nij == 0) continue;
      const auto v = static_cast<double>(nij);
      mi += v / n *
            std::log(n * v / (static_cast<double>(t.row_sums[i]) * static_cast<double>(t.col_sums[j])));
    }
  }
  return std::clamp(mi / std::sqrt(h_pred * h_true), 0.0, 1.0);
}

double nmi(const LabelMap& pred, const LabelMap& truth) { return nmi(contingency(pred, truth)); }

double ari(const ContingencyTable& t) {
  double index = 0.0;
  for (auto v : t.counts) index += choose2(v);
  double sum_rows = 0.0;
  for (auto v : t.row_sums) sum_rows += choose2(v);
  double sum_cols = 0.0;
  for (auto v : t.col_sums) sum_cols += choose2(v);
  const double pairs = choose2(t.total);
  const double expected = pairs > 0.0 ? sum_rows * sum_cols / pairs : 0.0;
  const double maximum = 0.5 * (sum_rows + sum_cols);
  if (maximum == expected) return 1.0;
  return (index - expected) / (maximum - expected);
}

double ari(const LabelMap& pred, const LabelMap& truth) { return ari(contingency(pred, truth)); }

F1Score unsupervised_f1(const ContingencyTable& t) {
  std::int64_t row_max = 0;
  for (std::size_t i = 0; i < t.clusters(); ++i) {
    std::int64_t best = 0;
    for (std::size_t j = 0; j < t.classes(); ++j) best = std::max(best, t.at(i, j));
    row_max += best;
  }
  std::int64_t col_max = 0;
  for (std::size_t j = 0; j < t.classes(); ++j) {
    std::int64_t best = 0;
    for (std::size_t i = 0; i < t.clusters(); ++i) best = std::max(best, t.at(i, j));
    col_max += best;
  }
  F1Score s;
  const auto n = static_cast<double>(t.total);
  s.precision = static_cast<double>(row_max) / n;
  s.recall = static_cast<double>(col_max) / n;
  s.f1 = (s.precision + s.recall) > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  return s;
}

F1Score unsupervised_f1(const LabelMap& pred, const LabelMap& truth) {
  return unsupervised_f1(contingency(pred, truth));
}

MetricsReport evaluate(const LabelMap& pred, const LabelMap& truth,
                       std::optional<double> ue_b_fraction) {
  const ContingencyTable t = contingency(pred, truth);
  MetricsReport r;
  r.nmi = nmi(t);
  r.ari = ari(t);
  const F1Score f = unsupervised_f1(t);
  r.precision = f.precision;
  r.recall = f.recall;
  r.f1 = f.f1;
  r.n_clusters = t.clusters();
  r.n_classes = t.classes();
  if (ue_b_fraction) r.ue = undersegmentation_error(pred, truth, *ue_b_fraction);
  return r;
}

}  // namespace hyperseg
