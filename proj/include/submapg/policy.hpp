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

// Tabular masked-softmax policies and the SubMAPG policy-gradient trainer.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "submapg/envs/environment.hpp"
#include "submapg/pme.hpp"
#include "submapg/rng.hpp"
#include "submapg/submodular.hpp"

namespace submapg {

// Softmax over the unmasked entries; masked entries get exactly 0.
// Throws InfeasibleError when every entry is masked, DomainError on
// non-finite logits.
std::vector<double> masked_softmax(std::span<const double> logits,
                                   const std::vector<bool>& mask);

// (slot, observation key)
using RowKey = std::pair<int, std::uint64_t>;
using PolicyGradient = std::map<RowKey, std::vector<double>>;

class TabularSoftmaxPolicy {
 public:
  TabularSoftmaxPolicy() = default;

  // Logits for a row; zeros of the mask's width when the row is unseen.
  std::vector<double> logits(const AgentObservation& o) const;
  // Creates the row at zeros on first use.
  std::vector<double>& row(const AgentObservation& o);
  bool has_row(const RowKey& key) const { return table_.count(key) != 0; }
  std::size_t rows() const { return table_.size(); }
  const std::map<RowKey, std::vector<double>>& table() const { return table_; }

  std::vector<double> probabilities(const AgentObservation& o) const;
  // x(theta): block k holds agent k's action probabilities.
  MarginalVector marginals(std::span<const AgentObservation> obs) const;
  // One independent draw per agent; always full.
  FeasibleSet sample(std::span<const AgentObservation> obs, Rng& rng) const;
  // Most probable action per agent (lowest index on ties).
  FeasibleSet greedy(std::span<const AgentObservation> obs) const;

  // theta <- theta + eta * g
  void apply(const PolicyGradient& g, double eta);

  // slot \t obs_key \t action \t logit, rows in key order.
  void save(std::ostream& out) const;
  static TabularSoftmaxPolicy load(std::istream& in);

  friend bool operator==(const TabularSoftmaxPolicy&,
                         const TabularSoftmaxPolicy&) = default;

 private:
  std::map<RowKey, std::vector<double>> table_;
};

// grad_theta log pi(action | o) for one row: one-hot minus probabilities on
// unmasked entries, zero on masked ones.
std::vector<double> score_check(const TabularSoftmaxPolicy& p,
                                const AgentObservation& o, int action);

// Exact gradient of F's multilinear extension at x(theta) pulled back
// through each row's softmax Jacobian. Agents with equal row keys share
// parameters and their contributions add.
PolicyGradient exact_stage_gradient(const TabularSoftmaxPolicy& p,
                                    std::span<const AgentObservation> obs,
                                    const SetFunction& f);

struct RoundRecord {
  std::vector<AgentObservation> observations;
  FeasibleSet joint;
  double value = 0.0;                   // F_t(A_t)
  std::vector<double> counterfactual;   // F_t(A_t minus agent k)
  std::vector<double> rewards;          // training reward of agent k
  std::size_t targets = 0;
  std::optional<double> opt;            // brute-force OPT_t when recorded
  std::string digest;                   // environment state before acting
};
using Trajectory = std::vector<RoundRecord>;

enum class RewardMode { kDifference, kShared };
enum class BaselineMode { kNone, kMovingAverage };

// Per-(slot, observation) exponential moving average of observed returns.
class ReturnBaseline {
 public:
  explicit ReturnBaseline(BaselineMode mode = BaselineMode::kNone,
                          double decay = 0.99)
      : mode_(mode), decay_(decay) {}

  BaselineMode mode() const { return mode_; }
  double value(const RowKey& key) const;
  void update(const RowKey& key, double observed);

 private:
  BaselineMode mode_;
  double decay_;
  std::map<RowKey, double> average_;
};

// G[t][k] = sum of agent k's rewards over rounds >= t in which its slot is
// active.
std::vector<std::vector<double>> suffix_returns(const Trajectory& traj);

// Psi = G - b with b read before the baseline absorbs this trajectory's
// returns.
std::vector<std::vector<double>> difference_returns(const Trajectory& traj,
                                                    ReturnBaseline& baseline);
std::vector<std::vector<double>> difference_returns(const Trajectory& traj);

PolicyGradient surrogate_gradient(const TabularSoftmaxPolicy& p,
                                  const Trajectory& traj,
                                  const std::vector<std::vector<double>>& psi);

// One episode under p from a fresh reset of env. The environment draws from
// rng.derive(0) and the policy from rng.derive(1).
Trajectory rollout(Environment& env, const TabularSoftmaxPolicy& p,
                   RewardMode mode, Rng& rng, bool record_opt = false);

struct TrainOptions {
  std::size_t episodes = 1000;
  double eta = 0.1;
  BaselineMode baseline = BaselineMode::kNone;
  RewardMode reward = RewardMode::kDifference;
  bool record_opt = false;
};

struct EpisodeStats {
  std::size_t episode = 0;
  double episode_return = 0.0;  // sum_t F_t(A_t)
};

// Called after each episode's update with the rollout that produced it.
using EpisodeCallback = std::function<void(
    std::size_t episode, const Trajectory& traj, const TabularSoftmaxPolicy& p)>;

// Algorithm 1 with vanilla gradient ascent. Episode k draws from
// rng.derive(k).
std::vector<EpisodeStats> submapg_train(const EnvFactory& make_env,
                                        TabularSoftmaxPolicy& p,
                                        const TrainOptions& options,
                                        const Rng& rng,
                                        const EpisodeCallback& callback = {});

}  // namespace submapg
