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

#include "submapg/envs/bandit.hpp"

#include "submapg/errors.hpp"

namespace submapg {

BanditEnvironment::BanditEnvironment(std::shared_ptr<const SetFunction> f,
                                     std::size_t horizon)
    : f_(std::move(f)), horizon_(horizon) {
  if (!f_) throw ValidationError("bandit needs a utility");
  if (horizon_ == 0) throw ConfigError("bandit horizon must be positive");
}

std::vector<int> BanditEnvironment::active_agents() const {
  std::vector<int> ids(f_->matroid().num_agents());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  return ids;
}

std::vector<AgentObservation> BanditEnvironment::observe() const {
  std::vector<AgentObservation> obs;
  const auto& m = f_->matroid();
  for (std::size_t i = 0; i < m.num_agents(); ++i) {
    obs.push_back({static_cast<int>(i), 0,
                   std::vector<bool>(static_cast<std::size_t>(m.actions(i)), true)});
  }
  return obs;
}

std::vector<std::vector<bool>> BanditEnvironment::comm_graph() const {
  const auto n = f_->matroid().num_agents();
  return std::vector<std::vector<bool>>(n, std::vector<bool>(n, false));
}

void BanditEnvironment::step(const FeasibleSet& joint, Rng&) {
  if (joint.num_agents() != f_->matroid().num_agents()) {
    throw ValidationError("joint action has the wrong number of agents");
  }
  ++round_;
}

std::string BanditEnvironment::digest() const {
  return fnv1a_hex("bandit;" + std::to_string(round_));
}

WeightedCoverage overlap_bandit() {
  return WeightedCoverage(PartitionMatroid({3, 3}), {1.0, 0.8, 0.3},
                          {{0}, {1}, {2}, {0}, {1}, {2}});
}

}  // namespace submapg
