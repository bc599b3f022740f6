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

#include "submapg/envs/open_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "submapg/envs/environment.hpp"
#include "submapg/errors.hpp"

namespace submapg {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[k] = kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::size_t OpenSchedule::active_count(int step) const {
  std::size_t n = 0;
  for (std::size_t e = 0; e < entities.size(); ++e) n += active(e, step);
  return n;
}

OpenSchedule open_schedule(int horizon, std::size_t base_count,
                           std::size_t extra_count, int min_lifespan,
                           double window_fraction, Rng& rng,
                           std::size_t capacity) {
  if (horizon <= min_lifespan) {
    throw ConfigError("horizon must exceed the minimum lifespan");
  }
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw ConfigError("arrival window fraction must lie in (0, 1]");
  }
  const int window = std::max(
      1, static_cast<int>(std::floor(window_fraction * horizon)));
  if (extra_count > 0 && window + min_lifespan > horizon) {
    throw ConfigError("late arrivals could not live for the minimum lifespan");
  }
  if (capacity > 0 && base_count + extra_count > capacity) {
    throw ConfigError("population exceeds capacity " + std::to_string(capacity));
  }
  OpenSchedule s;
  s.horizon = horizon;
  for (std::size_t k = 0; k < base_count; ++k) s.entities.push_back({1, horizon});
  for (std::size_t k = 0; k < extra_count; ++k) {
    const int arrival = static_cast<int>(rng.integer(1, window));
    const int residual = static_cast<int>(rng.integer(0, horizon - arrival));
    const int departure =
        std::min(horizon, arrival + std::max(min_lifespan, residual));
    s.entities.push_back({arrival, departure});
  }
  return s;
}

OpenSchedule closed_schedule(int horizon, std::size_t count) {
  OpenSchedule s;
  s.horizon = horizon;
  s.entities.assign(count, {1, horizon});
  return s;
}

}  // namespace submapg
