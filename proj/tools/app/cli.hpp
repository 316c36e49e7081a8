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

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hyperseg/metrics.hpp"
#include "hyperseg/noise.hpp"
#include "hyperseg/regionseg.hpp"

namespace hyperseg::app {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInput = 2,
  kPipeline = 3,
};

/// Runs the command line; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

nlohmann::json to_json(const MetricsReport& report);
nlohmann::json to_json(const SegmentationConfig& config);
nlohmann::json to_json(const NoiseSpec& spec);

}  // namespace hyperseg::app
