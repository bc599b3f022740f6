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

#include "submapg/envs/instances.hpp"

#include <algorithm>
#include <numbers>

namespace submapg {

WeightedCoverage small_coverage_instance(Rng& rng) {
  constexpr int kSide = 8;
  CoverageState s;
  const auto kind = static_cast<DensityKind>(rng.index(3));
  s.field = density_field(kind, kSide, kSide, rng());
  s.r_cov = static_cast<int>(rng.index(3));
  const int agents = 1 + static_cast<int>(rng.index(3));
  std::vector<std::vector<Move>> moves;
  for (int i = 0; i < agents; ++i) {
    s.positions.push_back({static_cast<int>(rng.index(kSide)),
                           static_cast<int>(rng.index(kSide))});
    s.active.push_back(true);
    std::vector<Move> all{Move::kStay, Move::kRight, Move::kUp, Move::kLeft,
                          Move::kDown};
    for (int k = kNumMoves - 1; k > 0; --k) {
      std::swap(all[k], all[rng.index(k + 1)]);
    }
    all.resize(1 + rng.index(3));
    moves.push_back(all);
  }
  return coverage_oracle(s, moves);
}

MaxScoreOracle small_tracking_instance(Rng& rng) {
  TrackingState s;
  s.params.side = 30.0;
  s.params.num_rates = 1 + static_cast<int>(rng.index(3));
  s.params.prediction_steps = 3;
  const int agents = 1 + static_cast<int>(rng.index(3));
  const int targets = 1 + static_cast<int>(rng.index(4));
  for (int i = 0; i < agents; ++i) {
    s.agents.push_back({rng.uniform(5.0, 25.0), rng.uniform(5.0, 25.0),
                        rng.uniform(-std::numbers::pi, std::numbers::pi)});
    s.agent_active.push_back(true);
  }
  for (int j = 0; j < targets; ++j) {
    const Pose& near = s.agents[rng.index(agents)];
    Target t;
    t.x = std::clamp(near.x + rng.uniform(-8.0, 8.0), 0.0, s.params.side);
    t.y = std::clamp(near.y + rng.uniform(-8.0, 8.0), 0.0, s.params.side);
    s.targets.push_back(t);
    s.target_active.push_back(true);
  }
  return tracking_oracle(s);
}

}  // namespace submapg
