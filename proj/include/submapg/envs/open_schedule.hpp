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

#include <cstddef>
#include <vector>

#include "submapg/rng.hpp"

namespace submapg {

// Entity lifetimes in 1-based steps; active on [arrival, departure].
struct Lifespan {
  int arrival = 1;
  int departure = 1;
};

struct OpenSchedule {
  int horizon = 0;
  std::vector<Lifespan> entities;  // base entities first, then extras

  bool active(std::size_t entity, int step) const {
    const auto& l = entities[entity];
    return l.arrival <= step && step <= l.departure;
  }
  std::size_t active_count(int step) const;
};

// Base entities live on [1, T]. Each extra arrives uniformly in
// [1, floor(window_fraction T)] and departs at
// min(T, arrival + max(min_lifespan, residual)) with residual uniform on
// [0, T - arrival]. Throws ConfigError on contradictory parameters.
OpenSchedule open_schedule(int horizon, std::size_t base_count,
                           std::size_t extra_count, int min_lifespan,
                           double window_fraction, Rng& rng,
                           std::size_t capacity = 0);

// Everyone present for the whole horizon.
OpenSchedule closed_schedule(int horizon, std::size_t count);

}  // namespace submapg
