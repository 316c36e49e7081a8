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

#include "hyperseg/components.hpp"
#include "hyperseg/cube.hpp"
#include "hyperseg/error.hpp"
#include "hyperseg/matrix.hpp"
#include "hyperseg/meanshift.hpp"
#include "hyperseg/metrics.hpp"
#include "hyperseg/noise.hpp"
#include "hyperseg/npy.hpp"
#include "hyperseg/parallel.hpp"
#include "hyperseg/pca.hpp"
#include "hyperseg/regionseg.hpp"
#include "hyperseg/superpixel.hpp"
