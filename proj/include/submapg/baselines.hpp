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

// Comparison strategies: sequential greedy, an online local greedy, uniform
// random play, and training with the shared global reward.

#include <string>
#include <vector>

#include "submapg/policy.hpp"
#include "submapg/rng.hpp"
#include "submapg/submodular.hpp"

namespace submapg {

enum class BaselineKind {
  kCsgGlobal,
  kCsgLocal,
  kOnlineLocalGreedy,
  kRandom,
  kSharedRewardTrain,
};

BaselineKind parse_baseline_kind(const std::string& tag);
const char* to_string(BaselineKind kind);

enum class Sensing { kGlobal, kLocal };

// Agents in ascending order each take the action with the largest marginal
// gain given earlier picks (lowest action on ties). With local sensing an
// agent scores candidates on the part of F it senses, when F exposes one.
FeasibleSet csg(const SetFunction& f, Sensing sensing = Sensing::kGlobal);

// Like local-sensing csg, except agent k only knows the picks of earlier
// agents adjacent to it in `comm`.
FeasibleSet online_local_greedy(const SetFunction& f,
                                const std::vector<std::vector<bool>>& comm);

// One uniform action per agent.
FeasibleSet random_policy(const PartitionMatroid& m, Rng& rng);

// submapg_train with every agent rewarded by F_t(A_t).
std::vector<EpisodeStats> shared_reward_train(const EnvFactory& make_env,
                                              TabularSoftmaxPolicy& p,
                                              std::size_t episodes, double eta,
                                              const Rng& rng,
                                              const EpisodeCallback& callback = {});

}  // namespace submapg
