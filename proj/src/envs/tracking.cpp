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

#include "submapg/envs/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "submapg/errors.hpp"

namespace submapg {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp_coord(double v, double side) { return std::clamp(v, 0.0, side); }

double reflect(double v, double side, bool& flipped) {
  flipped = false;
  if (v < 0.0) {
    v = -v;
    flipped = true;
  } else if (v > side) {
    v = 2.0 * side - v;
    flipped = true;
  }
  return clamp_coord(v, side);
}

TargetPattern draw_pattern(const std::string& name, Rng& rng) {
  if (name != "mixed") return parse_target_pattern(name);
  // Static : Linear : Random = 1 : 3 : 8.
  const auto k = rng.index(12);
  if (k < 1) return TargetPattern::kStatic;
  if (k < 4) return TargetPattern::kLinear;
  return TargetPattern::kRandom;
}

}  // namespace

std::vector<double> steering_rates(const TrackingParams& p) {
  if (p.num_rates <= 0) throw ConfigError("num_rates must be positive");
  if (p.num_rates == 1) return {0.0};
  std::vector<double> rates(p.num_rates);
  for (int k = 0; k < p.num_rates; ++k) {
    rates[k] = -p.max_rate + 2.0 * p.max_rate * k / (p.num_rates - 1);
  }
  return rates;
}

double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

Pose unicycle_step(const Pose& pose, double omega, const TrackingParams& p) {
  Pose next;
  next.x = clamp_coord(pose.x + p.v_a * p.dt * std::cos(pose.heading), p.side);
  next.y = clamp_coord(pose.y + p.v_a * p.dt * std::sin(pose.heading), p.side);
  next.heading = wrap_angle(pose.heading + omega * p.dt);
  return next;
}

TargetPattern parse_target_pattern(const std::string& name) {
  if (name == "static") return TargetPattern::kStatic;
  if (name == "linear") return TargetPattern::kLinear;
  if (name == "random") return TargetPattern::kRandom;
  throw ConfigError("unknown target pattern '" + name + "'");
}

const char* to_string(TargetPattern pattern) {
  switch (pattern) {
    case TargetPattern::kStatic: return "static";
    case TargetPattern::kLinear: return "linear";
    case TargetPattern::kRandom: return "random";
  }
  return "unknown";
}

Target target_step(const Target& target, const TrackingParams& p, Rng& rng) {
  Target next = target;
  if (target.pattern == TargetPattern::kStatic) return next;
  if (target.pattern == TargetPattern::kRandom && rng.bernoulli(p.resample_prob)) {
    next.direction = rng.uniform(-kPi, kPi);
  }
  bool flipped = false;
  next.x = reflect(next.x + p.v_m * p.dt * std::cos(next.direction), p.side,
                   flipped);
  if (flipped) next.direction = kPi - next.direction;
  next.y = reflect(next.y + p.v_m * p.dt * std::sin(next.direction), p.side,
                   flipped);
  if (flipped) next.direction = -next.direction;
  next.direction = wrap_angle(next.direction);
  return next;
}

std::vector<int> TrackingState::active_agent_ids() const {
  std::vector<int> ids;
  for (std::size_t i = 0; i < agent_active.size(); ++i) {
    if (agent_active[i]) ids.push_back(static_cast<int>(i));
  }
  return ids;
}

std::vector<int> TrackingState::active_target_ids() const {
  std::vector<int> ids;
  for (std::size_t j = 0; j < target_active.size(); ++j) {
    if (target_active[j]) ids.push_back(static_cast<int>(j));
  }
  return ids;
}

Pose predicted_pose(const Pose& pose, double omega, const TrackingParams& p) {
  Pose q = pose;
  for (int k = 0; k < std::max(1, p.prediction_steps); ++k) {
    q = unicycle_step(q, omega, p);
  }
  return q;
}

MaxScoreOracle tracking_oracle(const TrackingState& s) {
  const auto agents = s.active_agent_ids();
  const auto targets = s.active_target_ids();
  const auto rates = steering_rates(s.params);
  const int na = static_cast<int>(rates.size());
  PartitionMatroid m(std::vector<int>(agents.size(), na));
  std::vector<std::vector<double>> scores(
      targets.size(), std::vector<double>(m.ground_size(), 0.0));
  std::vector<std::vector<int>> sensed(agents.size());
  const double r = s.params.r_sen;
  for (std::size_t k = 0; k < agents.size(); ++k) {
    const Pose& pose = s.agents[agents[k]];
    for (int a = 0; a < na; ++a) {
      const Pose q = predicted_pose(pose, rates[a], s.params);
      for (std::size_t j = 0; j < targets.size(); ++j) {
        const Target& tg = s.targets[targets[j]];
        const double d = std::hypot(q.x - tg.x, q.y - tg.y);
        scores[j][m.offset(k) + a] = std::max(0.0, (r - d) / r);
      }
    }
    for (std::size_t j = 0; j < targets.size(); ++j) {
      const Target& tg = s.targets[targets[j]];
      if (std::hypot(pose.x - tg.x, pose.y - tg.y) <= r) {
        sensed[k].push_back(static_cast<int>(j));
      }
    }
  }
  const double n = static_cast<double>(agents.size());
  const double mt = static_cast<double>(targets.size());
  const double scale = n > 0 && mt > 0 ? 1.0 / (n * mt) : 0.0;
  const double bound = n > 0 && mt > 0 ? 1.0 / n : 0.0;
  MaxScoreOracle oracle(std::move(m), std::move(scores), scale, bound);
  oracle.set_sensing(std::move(sensed));
  return oracle;
}

double tracking_utility(const FeasibleSet& a, const TrackingState& s) {
  return tracking_oracle(s).value(a);
}

TrackingState tracking_step(const TrackingState& s, const FeasibleSet& a,
                            Rng& rng) {
  const auto agents = s.active_agent_ids();
  if (a.num_agents() != agents.size() || !a.is_full()) {
    throw ValidationError("tracking step needs one rate per active agent");
  }
  const auto rates = steering_rates(s.params);
  TrackingState next = s;
  for (std::size_t k = 0; k < agents.size(); ++k) {
    const int action = *a.selection(k);
    if (action < 0 || action >= static_cast<int>(rates.size())) {
      throw ValidationError("unknown steering action");
    }
    next.agents[agents[k]] = unicycle_step(s.agents[agents[k]], rates[action],
                                           s.params);
  }
  for (int j : s.active_target_ids()) {
    next.targets[j] = target_step(s.targets[j], s.params, rng);
  }
  return next;
}

std::uint64_t observe_tracking(const TrackingState& s, int agent) {
  const Pose& pose = s.agents.at(agent);
  const double r = s.params.r_sen;
  double best = 0.0;
  int nearest = -1;
  for (int j : s.active_target_ids()) {
    const double d = std::hypot(s.targets[j].x - pose.x, s.targets[j].y - pose.y);
    if (d <= r && (nearest < 0 || d < best)) {
      best = d;
      nearest = j;
    }
  }
  std::uint64_t code = kNoTargetSensed;
  if (nearest >= 0) {
    const Target& tg = s.targets[nearest];
    const double rel =
        wrap_angle(std::atan2(tg.y - pose.y, tg.x - pose.x) - pose.heading);
    const int sector = std::clamp(
        static_cast<int>(std::floor((rel + kPi) / (kPi / 4.0))), 0, 7);
    const int ring =
        std::clamp(static_cast<int>(std::floor(best / (r / 3.0))), 0, 2);
    code = 1 + 3 * sector + ring;
  }
  int neighbors = 0;
  for (int i : s.active_agent_ids()) {
    if (i == agent) continue;
    const double d = std::hypot(s.agents[i].x - pose.x, s.agents[i].y - pose.y);
    if (d <= s.params.r_com) ++neighbors;
  }
  return code * 3 + static_cast<std::uint64_t>(std::min(neighbors, 2));
}

TrackingEnv::TrackingEnv(TrackingConfig config) : config_(std::move(config)) {
  if (config_.agents <= 0 || config_.targets < 0 || config_.horizon <= 0) {
    throw ConfigError("tracking needs positive agents and horizon");
  }
  if (config_.open && (config_.base_agents > config_.agents ||
                       config_.base_targets > config_.targets)) {
    throw ConfigError("base counts exceed the entity counts");
  }
  if (config_.pattern != "mixed") parse_target_pattern(config_.pattern);
  steering_rates(config_.params);
  state_.params = config_.params;
  state_.agents.assign(config_.agents, Pose{});
  state_.agent_active.assign(config_.agents, false);
  state_.targets.assign(config_.targets, Target{});
  state_.target_active.assign(config_.targets, false);
}

Pose TrackingEnv::random_pose(Rng& rng) {
  const double side = config_.params.side;
  return {rng.uniform(0.0, side), rng.uniform(0.0, side), rng.uniform(-kPi, kPi)};
}

Target TrackingEnv::random_target(Rng& rng) {
  const double side = config_.params.side;
  Target t;
  t.x = rng.uniform(0.0, side);
  t.y = rng.uniform(0.0, side);
  t.direction = rng.uniform(-kPi, kPi);
  t.pattern = draw_pattern(config_.pattern, rng);
  return t;
}

void TrackingEnv::reset(Rng& rng) {
  round_ = 0;
  if (config_.open) {
    agent_schedule_ = open_schedule(
        config_.horizon, config_.base_agents, config_.agents - config_.base_agents,
        config_.min_lifespan, config_.window_fraction, rng, config_.agents);
    target_schedule_ = open_schedule(
        config_.horizon, config_.base_targets,
        config_.targets - config_.base_targets, config_.min_lifespan,
        config_.window_fraction, rng, config_.targets);
  } else {
    agent_schedule_ = closed_schedule(config_.horizon, config_.agents);
    target_schedule_ = closed_schedule(config_.horizon, config_.targets);
  }
  for (auto& a : state_.agents) a = random_pose(rng);
  for (auto& t : state_.targets) t = random_target(rng);
  std::fill(state_.agent_active.begin(), state_.agent_active.end(), false);
  std::fill(state_.target_active.begin(), state_.target_active.end(), false);
  refresh_active(rng);
}

void TrackingEnv::refresh_active(Rng& rng) {
  const int step = static_cast<int>(round_) + 1;
  const bool live = step <= config_.horizon;
  for (int i = 0; i < config_.agents; ++i) {
    const bool now = live && agent_schedule_.active(i, step);
    if (now && !state_.agent_active[i] && round_ > 0) {
      state_.agents[i] = random_pose(rng);
    }
    state_.agent_active[i] = now;
  }
  for (int j = 0; j < config_.targets; ++j) {
    const bool now = live && target_schedule_.active(j, step);
    if (now && !state_.target_active[j] && round_ > 0) {
      state_.targets[j] = random_target(rng);
    }
    state_.target_active[j] = now;
  }
}

std::vector<AgentObservation> TrackingEnv::observe() const {
  std::vector<AgentObservation> obs;
  for (int id : state_.active_agent_ids()) {
    obs.push_back({id, observe_tracking(state_, id),
                   std::vector<bool>(config_.params.num_rates, true)});
  }
  return obs;
}

std::unique_ptr<SetFunction> TrackingEnv::utility() const {
  return std::make_unique<MaxScoreOracle>(tracking_oracle(state_));
}

std::vector<std::vector<bool>> TrackingEnv::comm_graph() const {
  const auto ids = state_.active_agent_ids();
  std::vector<std::vector<bool>> adj(ids.size(), std::vector<bool>(ids.size()));
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = 0; b < ids.size(); ++b) {
      const Pose& p = state_.agents[ids[a]];
      const Pose& q = state_.agents[ids[b]];
      adj[a][b] = a != b && std::hypot(p.x - q.x, p.y - q.y) <= config_.params.r_com;
    }
  }
  return adj;
}

void TrackingEnv::step(const FeasibleSet& joint, Rng& rng) {
  state_ = tracking_step(state_, joint, rng);
  ++round_;
  refresh_active(rng);
}

std::string TrackingEnv::digest() const {
  std::ostringstream os;
  os.precision(17);
  os << "tracking;" << round_ << ';';
  for (std::size_t i = 0; i < state_.agents.size(); ++i) {
    const Pose& p = state_.agents[i];
    os << p.x << ',' << p.y << ',' << p.heading << ',' << state_.agent_active[i]
       << ';';
  }
  for (std::size_t j = 0; j < state_.targets.size(); ++j) {
    const Target& t = state_.targets[j];
    os << t.x << ',' << t.y << ',' << t.direction << ',' << to_string(t.pattern)
       << ',' << state_.target_active[j] << ';';
  }
  return fnv1a_hex(os.str());
}

}  // namespace submapg
