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

#include "hyperseg/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

namespace hyperseg {
namespace {

std::atomic<std::size_t> g_limit{0};

std::size_t default_limit() {
  if (const char* env = std::getenv("HYPERSEG_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

void set_thread_limit(std::size_t threads) { g_limit.store(threads); }

std::size_t thread_limit() {
  const std::size_t v = g_limit.load();
  return v == 0 ? default_limit() : v;
}

}  // namespace hyperseg
