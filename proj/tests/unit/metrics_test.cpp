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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hyperseg/error.hpp"
#include "hyperseg/metrics.hpp"
#include "support/oracles.hpp"
#include "support/scenes.hpp"

namespace hyperseg {
namespace {

LabelMap strip(std::vector<std::int32_t> v) {
  const std::size_t n = v.size();
  return LabelMap(1, n, std::move(v));
}

TEST(Contingency, CountsForegroundOnly) {
  const auto t = contingency(strip({1, 1, 2, 3, 3}), strip({0, 4, 4, 5, 0}));
  EXPECT_EQ(t.total, 3);
  EXPECT_EQ(t.cluster_labels, (std::vector<std::int32_t>{1, 2, 3}));
  EXPECT_EQ(t.class_labels, (std::vector<std::int32_t>{4, 5}));
  EXPECT_EQ(t.at(0, 0), 1);
  EXPECT_EQ(t.at(1, 0), 1);
  EXPECT_EQ(t.at(2, 1), 1);
  EXPECT_EQ(t.row_sums, (std::vector<std::int64_t>{1, 1, 1}));
  EXPECT_EQ(t.col_sums, (std::vector<std::int64_t>{2, 1}));
}

TEST(Nmi, StripExampleByHand) {
  // pred {0,0,1,1} vs truth {1,1,2,3}: joint cells (0,1)=2, (1,2)=1, (1,3)=1
  // I = 1/2 ln 2 + 2 * (1/4) ln 2 = ln 2;  H(pred) = ln 2;  H(truth) = 1.5 ln 2
  const double expect = std::log(2.0) / std::sqrt(std::log(2.0) * 1.5 * std::log(2.0));
  EXPECT_NEAR(nmi(strip({0, 0, 1, 1}), strip({1, 1, 2, 3})), expect, 1e-15);
  EXPECT_NEAR(expect, std::sqrt(2.0 / 3.0), 1e-15);
}

TEST(Nmi, Conventions) {
  EXPECT_EQ(nmi(strip({3, 3, 3}), strip({1, 1, 1})), 1.0);
  EXPECT_EQ(nmi(strip({3, 3, 3}), strip({1, 2, 1})), 0.0);
  EXPECT_EQ(nmi(strip({1, 2, 3}), strip({1, 1, 1})), 0.0);
  EXPECT_EQ(nmi(strip({5, 5, 7, 7}), strip({1, 1, 2, 2})), 1.0);
}

TEST(Ari, HandValues) {
  EXPECT_EQ(ari(strip({1, 1, 1, 1}), strip({1, 2, 3, 4})), 0.0);
  EXPECT_EQ(ari(strip({2, 1, 1, 3}), strip({7, 4, 4, 9})), 1.0);
  // pred {1,1,2,2} vs truth {1,2,1,2}: a = 0, expected = 2 * 2 / 6, max = 2
  const double expected = 4.0 / 6.0;
  EXPECT_NEAR(ari(strip({1, 1, 2, 2}), strip({1, 2, 1, 2})), (0 - expected) / (2 - expected), 1e-15);
}

TEST(Metrics, MatchOraclesOnRandomSmallMaps) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 24;
    const auto pred = testing::random_labels(n, 0, 1 + static_cast<std::int32_t>(rng() % 6), rng());
    auto truth = testing::random_labels(n, 0, 1 + static_cast<std::int32_t>(rng() % 6), rng());
    truth[rng() % n] = 1;  // at least one foreground pixel
    const LabelMap p = strip(pred), t = strip(truth);
    EXPECT_NEAR(ari(p, t), testing::brute_force_ari(pred, truth), 1e-12);
    EXPECT_NEAR(nmi(p, t), testing::direct_nmi(pred, truth), 1e-12);
    EXPECT_NEAR(undersegmentation_error(p, t, 0.15), testing::direct_ue(pred, truth, 0.15), 1e-12);
  }
}

TEST(Metrics, SymmetricAndPermutationInvariant) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::random_labels(40, 1, 5, rng());
    const auto b = testing::random_labels(40, 1, 4, rng());
    std::vector<std::int32_t> perm = {0, 1, 2, 3, 4, 5};
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    std::vector<std::int32_t> a2(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) a2[i] = perm[static_cast<std::size_t>(a[i])] + 10;
    EXPECT_NEAR(nmi(strip(a), strip(b)), nmi(strip(b), strip(a)), 1e-12);
    EXPECT_NEAR(ari(strip(a), strip(b)), ari(strip(b), strip(a)), 1e-12);
    EXPECT_NEAR(nmi(strip(a2), strip(b)), nmi(strip(a), strip(b)), 1e-12);
    EXPECT_NEAR(ari(strip(a2), strip(b)), ari(strip(a), strip(b)), 1e-12);
    EXPECT_NEAR(unsupervised_f1(strip(a2), strip(b)).f1, unsupervised_f1(strip(a), strip(b)).f1, 1e-12);
  }
}

TEST(Metrics, BackgroundIsIgnored) {
  const LabelMap truth = strip({0, 1, 1, 2, 0, 2});
  const double n1 = nmi(strip({9, 1, 1, 2, 9, 2}), truth);
  const double n2 = nmi(strip({4, 1, 1, 2, 3, 2}), truth);
  EXPECT_EQ(n1, n2);
  EXPECT_EQ(n1, 1.0);
}

TEST(Metrics, Ranges) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const LabelMap p = strip(testing::random_labels(30, 0, 6, rng()));
    const LabelMap t = strip(testing::random_labels(30, 1, 5, rng()));
    const MetricsReport r = evaluate(p, t, 0.15);
    EXPECT_GE(r.nmi, 0.0);
    EXPECT_LE(r.nmi, 1.0 + 1e-15);
    EXPECT_LE(r.ari, 1.0);
    EXPECT_GE(r.ari, -1.0);
    EXPECT_GE(r.f1, 0.0);
    EXPECT_LE(r.f1, 1.0);
    EXPECT_GE(*r.ue, 0.0);
  }
}

TEST(F1, TwoByOneTable) {
  const F1Score s = unsupervised_f1(strip({1, 1, 1, 1}), strip({1, 1, 2, 2}));
  EXPECT_EQ(s.precision, 0.5);
  EXPECT_EQ(s.recall, 1.0);
  EXPECT_DOUBLE_EQ(s.f1, 2.0 / 3.0);
}

TEST(F1, IdentityAndRefinement) {
  const F1Score id = unsupervised_f1(strip({1, 2, 2, 3}), strip({1, 2, 2, 3}));
  EXPECT_EQ(id.precision, 1.0);
  EXPECT_EQ(id.recall, 1.0);
  EXPECT_EQ(id.f1, 1.0);
  // splitting a cluster never lowers precision: max(a) + max(b) >= max(a + b)
  // over the split row
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    auto pred = testing::random_labels(30, 1, 3, rng());
    const auto truth = testing::random_labels(30, 1, 4, rng());
    const double before = unsupervised_f1(strip(pred), strip(truth)).precision;
    for (auto& v : pred)
      if (v == 1 && rng() % 2) v = 99;
    EXPECT_GE(unsupervised_f1(strip(pred), strip(truth)).precision, before - 1e-15);
  }
}

TEST(F1, SplittingCanLowerRecall) {
  // a class held by one cluster loses its column maximum when that cluster
  // is split in half
  const LabelMap truth = strip({1, 1, 1, 1});
  EXPECT_EQ(unsupervised_f1(strip({1, 1, 1, 1}), truth).recall, 1.0);
  EXPECT_EQ(unsupervised_f1(strip({1, 1, 2, 2}), truth).recall, 0.5);
}

TEST(Ue, Toys) {
  // one superpixel over two equal truth segments counts against both
  EXPECT_DOUBLE_EQ(undersegmentation_error(strip({1, 1, 1, 1}), strip({1, 1, 2, 2}), 0.15), 1.0);
  EXPECT_EQ(undersegmentation_error(strip({4, 4, 5, 5}), strip({1, 1, 2, 2}), 0.15), 0.0);
  // a 1-pixel leak of 1/5 = 0.2 > 0.15 counts, with b = 0.25 it does not
  const LabelMap sp = strip({1, 1, 1, 1, 1, 2, 2});
  const LabelMap gt = strip({1, 1, 1, 1, 2, 2, 2});
  EXPECT_DOUBLE_EQ(undersegmentation_error(sp, gt, 0.15), 5.0 / 7.0);
  EXPECT_DOUBLE_EQ(undersegmentation_error(sp, gt, 0.25), 0.0);
}

TEST(Evaluate, ReportFields) {
  const MetricsReport r = evaluate(strip({1, 1, 2, 2, 3}), strip({1, 1, 2, 2, 0}));
  EXPECT_FALSE(r.ue.has_value());
  EXPECT_EQ(r.nmi, 1.0);
  EXPECT_EQ(r.ari, 1.0);
  EXPECT_EQ(r.f1, 1.0);
  EXPECT_EQ(r.n_clusters, 2u);
  EXPECT_EQ(r.n_classes, 2u);
  EXPECT_EQ(evaluate(strip({1, 2}), strip({1, 2}), 0.15).ue, 0.0);
}

TEST(Metrics, Errors) {
  EXPECT_THROW(nmi(strip({1, 2}), strip({1, 2, 3})), ShapeError);
  EXPECT_THROW(ari(strip({1, 2}), strip({0, 0})), DegenerateInput);
  EXPECT_THROW(undersegmentation_error(strip({1, 2}), strip({1, 2}), 1.0), InvalidArgument);
}

}  // namespace
}  // namespace hyperseg
