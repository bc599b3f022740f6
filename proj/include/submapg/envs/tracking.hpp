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

// Continuous multi-target tracking in a square arena. Agents are unicycles
// steered by one of a fixed set of turn rates; targets are static, move
// linearly, or move with random direction changes.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "submapg/envs/environment.hpp"
#include "submapg/envs/open_schedule.hpp"
#include "submapg/oracles.hpp"

namespace submapg {

struct TrackingParams {
  double side = 100.0;
  double v_a = 1.0;
  double dt = 1.0;
  double r_sen = 10.0;
  double r_com = 25.0;
  double v_m = 0.25;
  int num_rates = 12;
  double max_rate = 0.5235987755982988;  // pi / 6
  double resample_prob = 0.05;
  // Unicycle steps used to predict a pair's position. With one step the
  // predicted position does not depend on the steering rate.
  int prediction_steps = 1;
};

// num_rates evenly spaced turn rates on [-max_rate, max_rate].
std::vector<double> steering_rates(const TrackingParams& p);

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
};

// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

// Position advances along the current heading, then the heading turns by
// omega * dt. Positions clamp to [0, side].
Pose unicycle_step(const Pose& pose, double omega, const TrackingParams& p);

enum class TargetPattern { kStatic, kLinear, kRandom };

TargetPattern parse_target_pattern(const std::string& name);
const char* to_string(TargetPattern pattern);

struct Target {
  double x = 0.0;
  double y = 0.0;
  double direction = 0.0;
  TargetPattern pattern = TargetPattern::kLinear;
};

// Static targets stay. Random targets first redraw their direction with
// probability resample_prob. Moving targets advance v_m * dt and reflect off
// the arena walls. Only random targets consume rng draws.
Target target_step(const Target& target, const TrackingParams& p, Rng& rng);

struct TrackingState {
  TrackingParams params;
  std::vector<Pose> agents;
  std::vector<bool> agent_active;
  std::vector<Target> targets;
  std::vector<bool> target_active;

  std::vector<int> active_agent_ids() const;
  std::vector<int> active_target_ids() const;
};

// Pair position after prediction_steps unicycle steps at that pair's rate.
Pose predicted_pose(const Pose& pose, double omega, const TrackingParams& p);

// F = 1/(|N||M|) * sum_j max_{e in A} max(0, (r_sen - |p_e - q_j|) / r_sen)
// over active agents N and targets M; zero when either set is empty.
// Agent k of the oracle senses the targets within r_sen of its current
// position.
MaxScoreOracle tracking_oracle(const TrackingState& s);

double tracking_utility(const FeasibleSet& a, const TrackingState& s);

// Advances active agents by their selected rates and every active target
// one step.
TrackingState tracking_step(const TrackingState& s, const FeasibleSet& a,
                            Rng& rng);

// Code of the nearest sensed target (0 when none, else 1 + 3 * sector +
// ring, with 8 bearing sectors relative to the heading and 3 range rings of
// width r_sen / 3), times 3, plus the neighbor count bucket (0, 1, 2+).
std::uint64_t observe_tracking(const TrackingState& s, int agent);

inline constexpr std::uint64_t kNoTargetSensed = 0;

struct TrackingConfig {
  TrackingParams params;
  int agents = 12;
  int targets = 12;
  int horizon = 200;
  // "static", "linear", "random", or "mixed" (1:3:8 draw per target).
  std::string pattern = "linear";
  bool open = false;
  int base_agents = 2;
  int base_targets = 2;
  int min_lifespan = 400;
  double window_fraction = 0.75;
};

class TrackingEnv final : public Environment {
 public:
  explicit TrackingEnv(TrackingConfig config);

  void reset(Rng& rng) override;
  std::size_t horizon() const override { return config_.horizon; }
  std::size_t round() const override { return round_; }
  std::vector<int> active_agents() const override {
    return state_.active_agent_ids();
  }
  std::size_t active_targets() const override {
    return state_.active_target_ids().size();
  }
  std::vector<AgentObservation> observe() const override;
  std::unique_ptr<SetFunction> utility() const override;
  std::vector<std::vector<bool>> comm_graph() const override;
  void step(const FeasibleSet& joint, Rng& rng) override;
  std::string digest() const override;

  const TrackingState& state() const { return state_; }
  const TrackingConfig& config() const { return config_; }

 private:
  void refresh_active(Rng& rng);
  Pose random_pose(Rng& rng);
  Target random_target(Rng& rng);

  TrackingConfig config_;
  TrackingState state_;
  OpenSchedule agent_schedule_;
  OpenSchedule target_schedule_;
  std::size_t round_ = 0;
};

}  // namespace submapg
