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

// Grid information coverage. Cells are (x, y) with x the column (rightward)
// and y the row (upward). An agent covers the Chebyshev disc of radius r_cov
// around the cell it moves to.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "submapg/envs/environment.hpp"
#include "submapg/envs/open_schedule.hpp"
#include "submapg/oracles.hpp"

namespace submapg {

enum class DensityKind { kUniform, kBimodal, kRbfSampled };

DensityKind parse_density_kind(const std::string& name);
const char* to_string(DensityKind kind);

struct DensityField {
  DensityKind kind = DensityKind::kUniform;
  int width = 0;
  int height = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;  // row-major, index y * width + x

  double at(int x, int y) const { return values[y * width + x]; }
  double total() const;
};

// uniform: 1 everywhere. bimodal: 0.01 + two unit-peak Gaussians at seeded
// centers with sigma = min(W,H)/6. rbf-sampled: random-feature draw of a
// squared-exponential process (length scale min(W,H)/5) rescaled to
// [0.01, 1].
DensityField density_field(DensityKind kind, int width, int height,
                           std::uint64_t seed);

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

enum class Move : int { kStay = 0, kRight = 1, kUp = 2, kLeft = 3, kDown = 4 };
inline constexpr int kNumMoves = 5;

Cell apply_move(Cell c, Move m, int width, int height);

struct CoverageState {
  DensityField field;
  int r_cov = 1;
  int r_com = 2;
  std::vector<Cell> positions;  // indexed by agent id
  std::vector<bool> active;     // indexed by agent id

  int width() const { return field.width; }
  int height() const { return field.height; }
  std::vector<int> active_ids() const;
};

// Stage utility over the active agents. moves[k] restricts the k-th active
// agent's actions to a subset of the five moves (all five when empty).
WeightedCoverage coverage_oracle(const CoverageState& s,
                                 const std::vector<std::vector<Move>>& moves = {});

// Covered density after every selected agent moves; blocks are the active
// agents with all five moves.
double coverage_utility(const FeasibleSet& a, const CoverageState& s);

// Moves every active agent by its selected action, clamped to the grid.
// Throws ValidationError unless `a` selects one move per active agent.
CoverageState coverage_step(const CoverageState& s, const FeasibleSet& a);

// Row-major cell index of the agent's own position.
std::uint64_t observe_coverage(const CoverageState& s, int agent);

struct CoverageConfig {
  int width = 30;
  int height = 30;
  int agents = 5;
  int r_cov = 1;
  int r_com = 2;
  int horizon = 100;
  int cluster = 5;  // start region side
  DensityKind density = DensityKind::kUniform;
  std::uint64_t field_seed = 0;
  // Open system: agents beyond `base_agents` arrive in the first
  // `window_fraction` of the horizon and live at least `min_lifespan` steps.
  bool open = false;
  int base_agents = 2;
  int min_lifespan = 20;
  double window_fraction = 0.5;
};

class CoverageEnv final : public Environment {
 public:
  explicit CoverageEnv(CoverageConfig config);

  void reset(Rng& rng) override;
  std::size_t horizon() const override { return config_.horizon; }
  std::size_t round() const override { return round_; }
  std::vector<int> active_agents() const override { return state_.active_ids(); }
  std::vector<AgentObservation> observe() const override;
  std::unique_ptr<SetFunction> utility() const override;
  std::vector<std::vector<bool>> comm_graph() const override;
  void step(const FeasibleSet& joint, Rng& rng) override;
  std::string digest() const override;

  const CoverageState& state() const { return state_; }
  const CoverageConfig& config() const { return config_; }

 private:
  void refresh_active(Rng& rng);
  Cell random_cluster_cell(Rng& rng);

  CoverageConfig config_;
  CoverageState state_;
  OpenSchedule schedule_;
  Cell cluster_origin_;
  std::size_t round_ = 0;
};

}  // namespace submapg
