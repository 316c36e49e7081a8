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
#include <vector>

#include "hyperseg/cube.hpp"

namespace hyperseg {

/// Cluster-by-class counts over the foreground (truth != 0) pixels.
struct ContingencyTable {
  std::vector<std::int32_t> cluster_labels;  // row keys, ascending
  std::vector<std::int32_t> class_labels;    // column keys, ascending
  std::vector<std::int64_t> counts;          // row-major clusters x classes
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::int64_t total = 0;

  std::size_t clusters() const noexcept { return cluster_labels.size(); }
  std::size_t classes() const noexcept { return class_labels.size(); }
  std::int64_t at(std::size_t i, std::size_t j) const noexcept {
    return counts[i * class_labels.size() + j];
  }
};

/// Throws ShapeError on mismatched dimensions and DegenerateInput when the
/// truth map has no foreground pixel.
ContingencyTable contingency(const LabelMap& pred, const LabelMap& truth);

/// Undersegmentation error. A superpixel S_j counts against truth segment
/// g_i when |S_j & g_i| > b_fraction * |S_j|; sizes use foreground pixels.
double undersegmentation_error(const LabelMap& superpixels, const LabelMap& truth,
                               double b_fraction = 0.15);

/// Normalized mutual information, natural log, sqrt(H(pred) H(truth))
/// normalisation. Two single-cluster partitions score 1, a single-cluster
/// partition against a non-trivial one scores 0.
double nmi(const LabelMap& pred, const LabelMap& truth);
double nmi(const ContingencyTable& table);

/// Adjusted Rand index; 1 when the expected and maximum index coincide.
double ari(const LabelMap& pred, const LabelMap& truth);
double ari(const ContingencyTable& table);

struct F1Score {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Precision = sum_k max_s a_ks / n, Recall = sum_s max_k a_ks / n.
F1Score unsupervised_f1(const LabelMap& pred, const LabelMap& truth);
F1Score unsupervised_f1(const ContingencyTable& table);

struct MetricsReport {
  std::optional<double> ue;
  double nmi = 0.0;
  double ari = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t n_clusters = 0;
  std::size_t n_classes = 0;
};

/// NMI, ARI and F1 in one pass; UE only when `ue_b_fraction` is given.
MetricsReport evaluate(const LabelMap& pred, const LabelMap& truth,
                       std::optional<double> ue_b_fraction = std::nullopt);

}  // namespace hyperseg
