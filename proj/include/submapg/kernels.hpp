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

// Data-parallel expectation kernels over product distributions of per-agent
// categorical choices. The OpenMP versions split the work into chunks whose
// boundaries depend only on the problem size, and partial results are folded
// in chunk order, so output is bit-identical for any thread count.
// `reference::` holds the serial implementations the tests compare against.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "submapg/rng.hpp"
#include "submapg/submodular.hpp"

namespace submapg {

struct Outcome {
  std::optional<int> action;  // empty = idle
  double prob = 0.0;
};

// Independent categorical choice per agent. Zero-probability outcomes are
// dropped at construction since they never contribute to an expectation.
class ProductDistribution {
 public:
  explicit ProductDistribution(std::vector<std::vector<Outcome>> agents);

  std::size_t num_agents() const { return agents_.size(); }
  std::span<const Outcome> outcomes(std::size_t agent) const {
    return agents_[agent];
  }
  // Number of joint outcomes with positive probability (saturating).
  std::uint64_t support_size() const;

  // One joint draw by inverse CDF per agent, in agent order.
  void sample(Rng& rng, FeasibleSet& out) const;

 private:
  std::vector<std::vector<Outcome>> agents_;
};

// Writes dim values for one joint outcome.
using VectorFn = std::function<void(const FeasibleSet&, std::span<double>)>;
// Writes dim values for one random draw using the supplied stream.
using SampleFn = std::function<void(Rng&, std::span<double>)>;

struct Moments {
  std::vector<double> mean;
  std::vector<double> stderr_;  // sample std / sqrt(n)
  std::vector<double> variance;  // unbiased sample variance
  std::uint64_t count = 0;
};

namespace kernels {

inline constexpr std::size_t kSampleChunk = 2048;

// E[fn(A)] by exhaustive enumeration of the support. Throws SizeError when
// the support exceeds `cap`.
std::vector<double> expectation(const ProductDistribution& dist,
                                std::size_t dim, const VectorFn& fn,
                                std::uint64_t cap);

// Sample mean and standard error of fn over n draws. Chunk c draws from
// base.derive(c).
Moments sample_moments(std::uint64_t n, std::size_t dim, const Rng& base,
                       const SampleFn& fn);

}  // namespace kernels

namespace reference {

// Depth-first enumeration, one agent per recursion level.
std::vector<double> expectation(const ProductDistribution& dist,
                                std::size_t dim, const VectorFn& fn,
                                std::uint64_t cap);

// Same chunking and streams as the parallel kernel, run on one thread.
Moments sample_moments(std::uint64_t n, std::size_t dim, const Rng& base,
                       const SampleFn& fn);

}  // namespace reference

}  // namespace submapg
