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

#include "submapg/baselines.hpp"

#include <memory>

#include "submapg/errors.hpp"

namespace submapg {

BaselineKind parse_baseline_kind(const std::string& tag) {
  if (tag == "csg_global") return BaselineKind::kCsgGlobal;
  if (tag == "csg_local") return BaselineKind::kCsgLocal;
  if (tag == "online_local_greedy") return BaselineKind::kOnlineLocalGreedy;
  if (tag == "random") return BaselineKind::kRandom;
  if (tag == "shared_reward_train") return BaselineKind::kSharedRewardTrain;
  throw ConfigError("unknown baseline '" + tag + "'");
}

const char* to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kCsgGlobal: return "csg_global";
    case BaselineKind::kCsgLocal: return "csg_local";
    case BaselineKind::kOnlineLocalGreedy: return "online_local_greedy";
    case BaselineKind::kRandom: return "random";
    case BaselineKind::kSharedRewardTrain: return "shared_reward_train";
  }
  return "unknown";
}

namespace {

// Agent k's view of F: the sensed part under local sensing, else F itself.
std::unique_ptr<SetFunction> view_of(const SetFunction& f, std::size_t agent,
                                     Sensing sensing) {
  if (sensing == Sensing::kLocal) {
    if (const auto* local = dynamic_cast<const LocalSensing*>(&f)) {
      return local->sensed_by(agent);
    }
  }
  return nullptr;
}

int best_action(const SetFunction& f, std::size_t agent, const FeasibleSet& known) {
  const int na = f.matroid().actions(agent);
  int pick = 0;
  double best = 0.0;
  const double base = f.value(known);
  for (int a = 0; a < na; ++a) {
    const double gain =
        f.value(known.with({static_cast<int>(agent), a})) - base;
    if (a == 0 || gain > best) {
      best = gain;
      pick = a;
    }
  }
  return pick;
}

FeasibleSet greedy_pass(const SetFunction& f, Sensing sensing,
                        const std::vector<std::vector<bool>>* comm) {
  const auto& m = f.matroid();
  FeasibleSet chosen(m.num_agents());
  for (std::size_t k = 0; k < m.num_agents(); ++k) {
    if (m.actions(k) == 0) continue;
    FeasibleSet known = chosen;
    if (comm) {
      for (std::size_t j = 0; j < k; ++j) {
        if (!(*comm).at(k).at(j)) known.clear(j);
      }
    }
    const auto view = view_of(f, k, sensing);
    chosen.select(k, best_action(view ? *view : f, k, known));
  }
  return chosen;
}

}  // namespace

FeasibleSet csg(const SetFunction& f, Sensing sensing) {
  return greedy_pass(f, sensing, nullptr);
}

FeasibleSet online_local_greedy(const SetFunction& f,
                                const std::vector<std::vector<bool>>& comm) {
  const auto n = f.matroid().num_agents();
  if (comm.size() != n) throw ShapeError("communication graph size mismatch");
  for (const auto& row : comm) {
    if (row.size() != n) throw ShapeError("communication graph is not square");
  }
  return greedy_pass(f, Sensing::kLocal, &comm);
}

FeasibleSet random_policy(const PartitionMatroid& m, Rng& rng) {
  FeasibleSet a(m.num_agents());
  for (std::size_t k = 0; k < m.num_agents(); ++k) {
    if (m.actions(k) > 0) a.select(k, static_cast<int>(rng.index(m.actions(k))));
  }
  return a;
}

std::vector<EpisodeStats> shared_reward_train(const EnvFactory& make_env,
                                              TabularSoftmaxPolicy& p,
                                              std::size_t episodes, double eta,
                                              const Rng& rng,
                                              const EpisodeCallback& callback) {
  TrainOptions options;
  options.episodes = episodes;
  options.eta = eta;
  options.reward = RewardMode::kShared;
  return submapg_train(make_env, p, options, rng, callback);
}

}  // namespace submapg
