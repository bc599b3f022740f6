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
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "submapg/rng.hpp"
#include "submapg/submodular.hpp"

namespace submapg {

// What one active agent sees at a round: its policy slot, a discrete
// observation key and the feasibility mask over its action set.
struct AgentObservation {
  int slot = 0;
  std::uint64_t key = 0;
  std::vector<bool> mask;
};

// A multi-agent episode. Block k of every utility/joint action belongs to
// active_agents()[k].
class Environment {
 public:
  virtual ~Environment() = default;

  virtual void reset(Rng& rng) = 0;
  virtual std::size_t horizon() const = 0;
  virtual std::size_t round() const = 0;
  bool done() const { return round() >= horizon(); }

  virtual std::vector<int> active_agents() const = 0;
  virtual std::size_t active_targets() const { return 0; }
  virtual std::vector<AgentObservation> observe() const = 0;
  // F_t(.; s_t) over the active agents' action blocks.
  virtual std::unique_ptr<SetFunction> utility() const = 0;
  // Adjacency among active agents (communication range).
  virtual std::vector<std::vector<bool>> comm_graph() const = 0;
  virtual void step(const FeasibleSet& joint, Rng& rng) = 0;
  // Hash of the full serialized state; equal digests mean equal states.
  virtual std::string digest() const = 0;
};

using EnvFactory = std::function<std::unique_ptr<Environment>()>;

// FNV-1a over bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace submapg
