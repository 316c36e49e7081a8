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

#include "hyperseg/components.hpp"

#include <algorithm>
#include <map>

#include "hyperseg/error.hpp"

namespace hyperseg {
namespace {

void check_grid(std::span<const std::int32_t> labels, std::size_t height, std::size_t width) {
  if (labels.size() != height * width)
    throw ShapeError("label grid size does not match its dimensions");
}

template <typename Fn>
void for_each_neighbor(std::size_t p, std::size_t height, std::size_t width, Fn&& fn) {
  const std::size_t r = p / width;
  const std::size_t c = p % width;
  if (r > 0) fn(p - width);
  if (c > 0) fn(p - 1);
  if (c + 1 < width) fn(p + 1);
  if (r + 1 < height) fn(p + width);
}

}  // namespace

std::vector<std::int32_t> component_index(std::span<const std::int32_t> labels,
                                          std::size_t height, std::size_t width,
                                          std::size_t* count) {
  check_grid(labels, height, width);
  const std::size_t n = labels.size();
  std::vector<std::int32_t> comp(n, -1);
  std::vector<std::size_t> stack;
  std::int32_t next = 0;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (comp[seed] >= 0) continue;
    const std::int32_t label = labels[seed];
    comp[seed] = next;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      for_each_neighbor(p, height, width, [&](std::size_t q) {
        if (comp[q] < 0 && labels[q] == label) {
          comp[q] = next;
          stack.push_back(q);
        }
      });
    }
    ++next;
  }
  if (count) *count = static_cast<std::size_t>(next);
  return comp;
}

std::vector<Component> connected_components(std::span<const std::int32_t> labels,
                                            std::size_t height, std::size_t width) {
  std::size_t count = 0;
  const auto comp = component_index(labels, height, width, &count);
  std::vector<Component> out(count);
  for (std::size_t p = 0; p < comp.size(); ++p) {
    auto& c = out[static_cast<std::size_t>(comp[p])];
    if (c.pixels.empty()) c.label = labels[p];
    c.pixels.push_back(p);
  }
  return out;
}

std::vector<std::int32_t> enforce_connectivity(std::span<const std::int32_t> labels,
                                               std::size_t height, std::size_t width) {
  const auto comps = connected_components(labels, height, width);
  std::vector<std::int32_t> out(labels.begin(), labels.end());

  std::map<std::int32_t, std::size_t> main_of;  // label -> component
  for (std::size_t c = 0; c < comps.size(); ++c) {
    auto [it, fresh] = main_of.try_emplace(comps[c].label, c);
    if (!fresh && comps[c].pixels.size() > comps[it->second].pixels.size()) it->second = c;
  }

  std::vector<char> settled(out.size(), 0);
  std::vector<std::size_t> pending;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (main_of[comps[c].label] == c) {
      for (auto p : comps[c].pixels) settled[p] = 1;
    } else {
      pending.push_back(c);
    }
  }
  std::stable_sort(pending.begin(), pending.end(), [&](std::size_t a, std::size_t b) {
    return comps[a].pixels.size() < comps[b].pixels.size();
  });

  // An orphan can only join a label through pixels already attached to that
  // label's main region; orphans enclosed by other orphans wait a round.
  while (!pending.empty()) {
    std::vector<std::size_t> deferred;
    for (auto c : pending) {
      std::map<std::int32_t, std::size_t> border;
      for (auto p : comps[c].pixels) {
        for_each_neighbor(p, height, width, [&](std::size_t q) {
          if (settled[q]) ++border[out[q]];
        });
      }
      if (border.empty()) {
        deferred.push_back(c);
        continue;
      }
      auto best = border.begin();
      for (auto it = border.begin(); it != border.end(); ++it)
        if (it->second > best->second) best = it;
      for (auto p : comps[c].pixels) {
        out[p] = best->first;
        settled[p] = 1;
      }
    }
    if (deferred.size() == pending.size())
      throw InternalError("enforce_connectivity: orphan regions with no settled neighbour");
    pending.swap(deferred);
  }
  return out;
}

std::vector<std::int32_t> remove_small_regions(std::span<const std::int32_t> labels,
                                               std::size_t height, std::size_t width,
                                               std::size_t min_area) {
  check_grid(labels, height, width);
  std::vector<std::int32_t> out(labels.begin(), labels.end());
  if (min_area <= 1) return out;

  std::vector<std::size_t> stamp(out.size(), 0);
  std::size_t epoch = 0;
  for (;;) {
    auto comps = connected_components(out, height, width);
    if (comps.size() <= 1) break;
    std::vector<std::size_t> small;
    for (std::size_t c = 0; c < comps.size(); ++c)
      if (comps[c].pixels.size() < min_area) small.push_back(c);
    if (small.empty()) break;
    std::stable_sort(small.begin(), small.end(), [&](std::size_t a, std::size_t b) {
      return comps[a].pixels.size() < comps[b].pixels.size();
    });

    bool changed = false;
    for (auto c : small) {
      const auto& pixels = comps[c].pixels;
      const std::size_t inside = ++epoch;
      for (auto p : pixels) stamp[p] = inside;
      const std::size_t seen = ++epoch;
      std::map<std::int32_t, std::size_t> votes;
      for (auto p : pixels) {
        for_each_neighbor(p, height, width, [&](std::size_t q) {
          if (stamp[q] == inside || stamp[q] == seen) return;
          stamp[q] = seen;
          ++votes[out[q]];
        });
      }
      if (votes.empty()) continue;
      auto best = votes.begin();
      for (auto it = votes.begin(); it != votes.end(); ++it)
        if (it->second > best->second) best = it;
      if (best->first == out[pixels.front()]) continue;
      for (auto p : pixels) out[p] = best->first;
      changed = true;
    }
    if (!changed) break;
  }
  return out;
}

}  // namespace hyperseg
