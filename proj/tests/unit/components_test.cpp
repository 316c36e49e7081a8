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

#include <map>
#include <set>

#include "hyperseg/components.hpp"
#include "support/scenes.hpp"

namespace hyperseg {
namespace {

using Grid = std::vector<std::int32_t>;

std::size_t components_of(const Grid& g, std::size_t h, std::size_t w) {
  return connected_components(g, h, w).size();
}

TEST(Components, RasterOrderAndFourConnectivity) {
  // diagonal neighbours are separate components
  const Grid g = {1, 0, 1,
                  0, 1, 0,
                  1, 1, 2};
  const auto comps = connected_components(g, 3, 3);
  ASSERT_EQ(comps.size(), 7u);
  EXPECT_EQ(comps[0].label, 1);
  EXPECT_EQ(comps[0].pixels, (std::vector<std::size_t>{0}));
  EXPECT_EQ(comps[1].label, 0);
  // the bottom-left L shape: pixels 4, 6, 7 share a component
  std::size_t count = 0;
  const auto idx = component_index(g, 3, 3, &count);
  EXPECT_EQ(count, 7u);
  EXPECT_EQ(idx[4], idx[7]);
  EXPECT_EQ(idx[6], idx[7]);
  EXPECT_NE(idx[0], idx[4]);
}

TEST(EnforceConnectivity, IdentityOnConnectedMaps) {
  const Grid g = {1, 1, 2, 2,
                  1, 1, 2, 2,
                  3, 3, 3, 3};
  EXPECT_EQ(enforce_connectivity(g, 3, 4), g);
}

TEST(EnforceConnectivity, OrphanJoinsLongestBoundary) {
  // label 1 has a stray pixel at (2, 2); it touches 2 on two sides and 3 on two
  // sides, so the tie goes to the lower label
  const Grid g = {1, 1, 2, 2, 2,
                  1, 1, 2, 2, 2,
                  3, 3, 1, 2, 2,
                  3, 3, 3, 3, 3};
  const Grid out = enforce_connectivity(g, 4, 5);
  EXPECT_EQ(out[12], 2);
  EXPECT_EQ(components_of(out, 4, 5), 3u);
}

TEST(EnforceConnectivity, EveryLabelEndsConnected) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t h = 12, w = 15;
    const Grid g = testing::random_labels(h * w, 0, 4, seed);
    const Grid out = enforce_connectivity(g, h, w);
    std::map<std::int32_t, int> per_label;
    for (const auto& c : connected_components(out, h, w)) ++per_label[c.label];
    for (const auto& [label, n] : per_label) EXPECT_EQ(n, 1) << "label " << label << " seed " << seed;
    // no new labels appear
    const std::set<std::int32_t> before(g.begin(), g.end());
    for (auto l : out) EXPECT_TRUE(before.count(l));
  }
}

TEST(RemoveSmallRegions, IslandTakesSurroundingLabel) {
  Grid g(25, 4);
  g[12] = 9;
  const Grid out = remove_small_regions(g, 5, 5, 2);
  EXPECT_EQ(out, Grid(25, 4));
}

TEST(RemoveSmallRegions, ModalNeighbourWithLowerTie) {
  // the single 7 touches 5 twice and 6 twice
  const Grid g = {5, 5, 5,
                  5, 7, 6,
                  6, 6, 6};
  const Grid out = remove_small_regions(g, 3, 3, 2);
  EXPECT_EQ(out[4], 5);
}

TEST(RemoveSmallRegions, NoUndersizedComponentRemains) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t h = 16, w = 16, min_area = 6;
    const Grid out = remove_small_regions(testing::random_labels(h * w, 1, 3, seed), h, w, min_area);
    const auto comps = connected_components(out, h, w);
    if (comps.size() == 1) continue;
    for (const auto& c : comps) EXPECT_GE(c.pixels.size(), min_area) << "seed " << seed;
  }
}

TEST(RemoveSmallRegions, SingleComponentImageIsKept) {
  const Grid g(9, 3);
  EXPECT_EQ(remove_small_regions(g, 3, 3, 100), g);
}

TEST(RemoveSmallRegions, ZeroThresholdIsIdentity) {
  const Grid g = testing::random_labels(30, 1, 5, 3);
  EXPECT_EQ(remove_small_regions(g, 5, 6, 0), g);
  EXPECT_EQ(remove_small_regions(g, 5, 6, 1), g);
}

}  // namespace
}  // namespace hyperseg
