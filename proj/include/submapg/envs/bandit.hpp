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

// Environments with a fixed stage utility and a single observation.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "submapg/envs/environment.hpp"
#include "submapg/oracles.hpp"

namespace submapg {

// Forwards to a shared oracle.
class SharedOracle final : public SetFunction {
 public:
  explicit SharedOracle(std::shared_ptr<const SetFunction> f) : f_(std::move(f)) {}

  const PartitionMatroid& matroid() const override { return f_->matroid(); }
  double value(const FeasibleSet& a) const override { return f_->value(a); }
  double marginal_bound() const override { return f_->marginal_bound(); }

 private:
  std::shared_ptr<const SetFunction> f_;
};

// Every round presents the same utility; every agent observes key 0 and may
// take any action. Agents never communicate.
class BanditEnvironment final : public Environment {
 public:
  BanditEnvironment(std::shared_ptr<const SetFunction> f, std::size_t horizon = 1);

  void reset(Rng&) override { round_ = 0; }
  std::size_t horizon() const override { return horizon_; }
  std::size_t round() const override { return round_; }
  std::vector<int> active_agents() const override;
  std::vector<AgentObservation> observe() const override;
  std::unique_ptr<SetFunction> utility() const override {
    return std::make_unique<SharedOracle>(f_);
  }
  std::vector<std::vector<bool>> comm_graph() const override;
  void step(const FeasibleSet& joint, Rng&) override;
  std::string digest() const override;

 private:
  std::shared_ptr<const SetFunction> f_;
  std::size_t horizon_;
  std::size_t round_ = 0;
};

// Two agents with three actions each. Action a of either agent covers item
// a, with item weights 1.0, 0.8 and 0.3. OPT = 1.8 (the agents split the two
// heaviest items); duplicating an item earns nothing extra.
WeightedCoverage overlap_bandit();

}  // namespace submapg
