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

// Euclidean projections onto the categorical face and the partition
// polytope, plus the zero-padding embedding that puts marginal vectors of
// changing agent populations into one fixed-dimensional space.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "submapg/pme.hpp"

namespace submapg {

// Projection of v onto {x >= 0, sum x = 1} when `equality`, otherwise onto
// {x >= 0, sum x <= 1}. Sort-and-threshold, O(k log k). Inputs already on
// the set (within kPolytopeTolerance) come back unchanged.
std::vector<double> project_block(std::span<const double> v, bool equality);

struct FaceSpec {
  std::vector<int> blocks;
  std::vector<bool> equality;  // per agent; true = sum-to-one

  // Categorical face: every block sums to one.
  static FaceSpec Categorical(std::vector<int> blocks);
  // Whole polytope: every block sums to at most one.
  static FaceSpec Polytope(std::vector<int> blocks);

  PartitionMatroid layout() const { return PartitionMatroid(blocks); }
};

// Blockwise project_block. Throws ShapeError when x's layout differs from
// the face. Output entries are clamped to [0, 1].
MarginalVector project_face(const MarginalVector& x, const FaceSpec& face);

// Assigns each agent id a fixed slot in [0, n_max). Arrivals take the lowest
// free slot; departures free theirs.
class SlotMap {
 public:
  SlotMap(std::size_t n_max, std::size_t na_max);

  // Returns the slot, assigning one if the agent is new. Throws MappingError
  // when every slot is taken.
  std::size_t assign(int agent_id);
  void release(int agent_id);
  std::optional<std::size_t> slot_of(int agent_id) const;
  // Explicit placement, for tests and replays.
  void place(int agent_id, std::size_t slot);

  std::size_t n_max() const { return slots_.size(); }
  std::size_t na_max() const { return na_max_; }
  std::size_t padded_dimension() const { return slots_.size() * na_max_; }

 private:
  std::vector<std::optional<int>> slots_;  // slot -> agent id
  std::size_t na_max_;
};

// Copies block k of x (agent agent_ids[k]) to its slot; every other
// coordinate is zero.
std::vector<double> embed(const MarginalVector& x,
                          std::span<const int> agent_ids, const SlotMap& slots);

// sum_t ||v_t - v_{t+1}||_2.
double path_length(std::span<const std::vector<double>> sequence);

struct ExplicitBounds {
  double diameter = 0.0;  // D <= sqrt(2 N_max)
  double gradient = 0.0;  // G <= B sqrt(N_max Na_max)
  double sigma = 0.0;     // sigma <= B sqrt(N_max Na_max)
};

// Closed-form constants for the step-size and regret formulas. Throws
// ValidationError when a face has more agents or actions than the maxima.
ExplicitBounds diameter_and_bounds(std::span<const FaceSpec> faces,
                                   double marginal_bound, std::size_t n_max,
                                   std::size_t na_max);

}  // namespace submapg
