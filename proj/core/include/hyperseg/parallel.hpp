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

namespace hyperseg {

/// Upper bound on worker threads used by the library. Zero restores the
/// default, which honours the HYPERSEG_THREADS environment variable and
/// otherwise uses every hardware thread. Results never depend on it.
void set_thread_limit(std::size_t threads);
std::size_t thread_limit();

}  // namespace hyperseg
