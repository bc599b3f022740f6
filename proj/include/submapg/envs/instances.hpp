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

// Seeded small instances of the shipped utilities, sized for exhaustive
// checks (at most 3 agents with at most 3 actions each).

#include "submapg/envs/coverage.hpp"
#include "submapg/envs/tracking.hpp"
#include "submapg/rng.hpp"

namespace submapg {

// 8x8 grid with a sampled density, 1-3 agents each restricted to 1-3
// distinct moves, r_cov in {0, 1, 2}.
WeightedCoverage small_coverage_instance(Rng& rng);

// 30 m arena, 1-3 agents with 1-3 turn rates, 1-4 targets placed near the
// agents, three-step prediction so the rates lead to distinct positions.
MaxScoreOracle small_tracking_instance(Rng& rng);

}  // namespace submapg
