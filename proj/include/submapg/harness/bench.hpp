// Copyright 2026 The Authors.
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

// Wall-clock timings behind `bench`.

#include <cstddef>
#include <string>
#include <vector>

#include "submapg/harness/config.hpp"

namespace submapg {

struct BenchConfig {
  std::size_t repeats = 20;
  int max_agents = 4;
  int actions = 3;
  int episode_horizon = 25;
  std::uint64_t seed = 0;
};

// Reads [bench]; an empty file is a usage error (ConfigError).
BenchConfig parse_bench(const ConfigFile& file);

struct BenchRow {
  std::string component;
  std::string size;
  double parallel_ms = 0.0;   // per call
  double reference_ms = 0.0;  // serial reference, 0 when none exists
};

// PME value, PME gradient, projection and one coverage episode for agent
// counts 1..max_agents.
std::vector<BenchRow> bench(const BenchConfig& config);
std::string format_bench(const std::vector<BenchRow>& rows);

}  // namespace submapg
