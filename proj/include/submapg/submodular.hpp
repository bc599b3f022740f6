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

// Ground sets of agent-action pairs, partition matroids over them, and the
// set-function oracle interface shared by every other module.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "submapg/rng.hpp"

namespace submapg {

struct AgentActionPair {
  int agent = 0;
  int action = 0;

  friend bool operator==(const AgentActionPair&,
                         const AgentActionPair&) = default;
};

// One block per active agent; block i holds that agent's action count.
class PartitionMatroid {
 public:
  PartitionMatroid() = default;
  explicit PartitionMatroid(std::vector<int> blocks);

  std::size_t num_agents() const { return blocks_.size(); }
  int actions(std::size_t agent) const { return blocks_[agent]; }
  const std::vector<int>& blocks() const { return blocks_; }
  // |Omega|, the number of agent-action pairs.
  std::size_t ground_size() const { return offsets_.back(); }
  // Flat index of (agent, 0) in block-major layout.
  std::size_t offset(std::size_t agent) const { return offsets_[agent]; }
  std::size_t flat_index(AgentActionPair e) const {
    return offsets_[e.agent] + static_cast<std::size_t>(e.action);
  }
  int max_actions() const;
  // Number of independent sets, prod_i (|A_i| + 1), saturating at UINT64_MAX.
  std::uint64_t independent_set_count() const;

  bool contains(AgentActionPair e) const {
    return e.agent >= 0 && static_cast<std::size_t>(e.agent) < blocks_.size() &&
           e.action >= 0 && e.action < blocks_[e.agent];
  }

  friend bool operator==(const PartitionMatroid& a, const PartitionMatroid& b) {
    return a.blocks_ == b.blocks_;
  }

 private:
  std::vector<int> blocks_;
  std::vector<std::size_t> offsets_{0};
};

// At most one action per agent; an empty slot means the agent idles.
class FeasibleSet {
 public:
  FeasibleSet() = default;
  explicit FeasibleSet(std::size_t num_agents) : selection_(num_agents) {}

  // Throws ValidationError on out-of-range pairs and ConstraintViolation when
  // two pairs share an agent.
  static FeasibleSet FromPairs(std::span<const AgentActionPair> pairs,
                               const PartitionMatroid& m);
  // One action per agent, in agent order.
  static FeasibleSet Full(std::span<const int> actions);

  std::size_t num_agents() const { return selection_.size(); }
  const std::optional<int>& selection(std::size_t agent) const {
    return selection_[agent];
  }
  void select(std::size_t agent, int action) { selection_[agent] = action; }
  void clear(std::size_t agent) { selection_[agent].reset(); }
  void assign(std::size_t agent, std::optional<int> choice) {
    selection_[agent] = choice;
  }

  bool contains(AgentActionPair e) const {
    return static_cast<std::size_t>(e.agent) < selection_.size() &&
           selection_[e.agent] == e.action;
  }
  // Number of selected pairs.
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool is_full() const { return size() == selection_.size(); }
  std::vector<AgentActionPair> pairs() const;

  FeasibleSet with(AgentActionPair e) const;
  FeasibleSet without(std::size_t agent) const;

  // Lexicographic key with idle ordered after every action.
  std::vector<int> order_key(const PartitionMatroid& m) const;

  std::string to_string() const;

  friend bool operator==(const FeasibleSet&, const FeasibleSet&) = default;

 private:
  std::vector<std::optional<int>> selection_;
};

// F_t(.; s_t): a stage utility bound to one realized state. Implementations
// are immutable after construction and safe for concurrent evaluation.
class SetFunction {
 public:
  virtual ~SetFunction() = default;
  virtual const PartitionMatroid& matroid() const = 0;
  virtual double value(const FeasibleSet& a) const = 0;
  // Upper bound B on every marginal gain.
  virtual double marginal_bound() const = 0;
};

// Oracles whose agents only perceive part of the state (tracking sensing
// radius). Returns F restricted to what `agent` senses.
class LocalSensing {
 public:
  virtual ~LocalSensing() = default;
  virtual std::unique_ptr<SetFunction> sensed_by(std::size_t agent) const = 0;
};

// Throws ValidationError unless `a` has one slot per block of m and every
// selected action lies in its block.
void require_member(const FeasibleSet& a, const PartitionMatroid& m);

// F(A + e) - F(A). Throws ConstraintViolation if A already selects e's agent.
double marginal_gain(const SetFunction& f, AgentActionPair e,
                     const FeasibleSet& a);

// True iff `pairs` uses each block at most once.
bool is_feasible(std::span<const AgentActionPair> pairs,
                 const PartitionMatroid& m);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

struct OptResult {
  FeasibleSet set;
  double value = 0.0;
};

// Exhaustive maximum over every independent set, including idle choices.
// Ties go to the lexicographically smallest selection vector with idle
// ordered after all actions, so full sets win ties against partial ones.
OptResult brute_force_opt(const SetFunction& f,
                          std::uint64_t cap = kDefaultEnumerationCap);

enum class PropertyKind { kNormalization, kMonotonicity, kSubmodularity, kMarginalBound };

const char* to_string(PropertyKind kind);

struct PropertyViolation {
  PropertyKind kind;
  FeasibleSet smaller;  // A
  FeasibleSet larger;   // B (equals A for single-set checks)
  std::optional<AgentActionPair> element;
  double measured = 0.0;  // amount by which the property fails
};

struct PropertyReport {
  std::vector<PropertyViolation> violations;
  std::size_t checks = 0;
  bool passed() const { return violations.empty(); }
};

enum class CheckMode { kExhaustive, kSampled };

// Checks normalization, monotone marginals, diminishing returns
// F(e|A) >= F(e|B) for A subset of B, and marginals in [0, B].
// `rng` is only used in sampled mode.
PropertyReport check_assumption(const SetFunction& f, CheckMode mode,
                                std::size_t trials, Rng* rng,
                                double tolerance = 1e-9,
                                std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace submapg
