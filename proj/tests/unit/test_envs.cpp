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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "submapg/envs/bandit.hpp"
#include "submapg/envs/coverage.hpp"
#include "submapg/envs/instances.hpp"
#include "submapg/envs/open_schedule.hpp"
#include "submapg/envs/tracking.hpp"
#include "submapg/errors.hpp"

namespace submapg {
namespace {

constexpr double kPi = std::numbers::pi;

CoverageState uniform_grid(std::vector<Cell> cells, int side = 30) {
  CoverageState s;
  s.field = density_field(DensityKind::kUniform, side, side, 0);
  s.positions = std::move(cells);
  s.active.assign(s.positions.size(), true);
  return s;
}

FeasibleSet all_stay(std::size_t n) {
  return FeasibleSet::Full(std::vector<int>(n, static_cast<int>(Move::kStay)));
}

TEST(Coverage, UtilityExamples) {
  EXPECT_DOUBLE_EQ(coverage_utility(all_stay(1), uniform_grid({{10, 10}})), 9.0);
  EXPECT_DOUBLE_EQ(coverage_utility(all_stay(1), uniform_grid({{0, 0}})), 4.0);
  EXPECT_DOUBLE_EQ(coverage_utility(all_stay(2), uniform_grid({{5, 5}, {5, 6}})), 12.0);
  // Moving right from (5,5) next to (7,5) overlaps two full columns.
  FeasibleSet a = FeasibleSet::Full(std::vector<int>{1, 0});
  EXPECT_DOUBLE_EQ(coverage_utility(a, uniform_grid({{5, 5}, {7, 5}})), 12.0);
  EXPECT_DOUBLE_EQ(coverage_utility(FeasibleSet(2), uniform_grid({{5, 5}, {7, 5}})), 0.0);
}

TEST(Coverage, StepExamples) {
  auto s = uniform_grid({{3, 3}, {29, 4}});
  auto next = coverage_step(s, FeasibleSet::Full(std::vector<int>{0, 1}));
  EXPECT_EQ(next.positions[0], (Cell{3, 3}));
  EXPECT_EQ(next.positions[1], (Cell{29, 4}));
  next = coverage_step(s, FeasibleSet::Full(std::vector<int>{2, 3}));
  EXPECT_EQ(next.positions[0], (Cell{3, 4}));
  EXPECT_EQ(next.positions[1], (Cell{28, 4}));
  next = coverage_step(s, FeasibleSet::Full(std::vector<int>{4, 4}));
  EXPECT_EQ(next.positions[0], (Cell{3, 2}));
  EXPECT_THROW(coverage_step(s, FeasibleSet(2)), ValidationError);
}

TEST(Coverage, DensityFields) {
  EXPECT_DOUBLE_EQ(density_field(DensityKind::kUniform, 30, 30, 1).total(), 900.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto bi = density_field(DensityKind::kBimodal, 30, 30, seed);
    const auto rbf = density_field(DensityKind::kRbfSampled, 30, 30, seed);
    for (double v : bi.values) {
      EXPECT_GE(v, 0.01);
      EXPECT_LE(v, 2.01);
    }
    for (double v : rbf.values) {
      EXPECT_GE(v, 0.01 - 1e-12);
      EXPECT_LE(v, 1.0 + 1e-12);
    }
    EXPECT_EQ(bi.values, density_field(DensityKind::kBimodal, 30, 30, seed).values);
    EXPECT_EQ(rbf.values, density_field(DensityKind::kRbfSampled, 30, 30, seed).values);
  }
  EXPECT_EQ(parse_density_kind("bimodal"), DensityKind::kBimodal);
  EXPECT_THROW(parse_density_kind("gaussian-ish"), ConfigError);
}

TEST(Coverage, ObservationIsRowMajorCell) {
  const auto s = uniform_grid({{3, 4}});
  EXPECT_EQ(observe_coverage(s, 0), 4u * 30u + 3u);
}

TEST(Coverage, MarginalBoundIsLargestDiscMass) {
  auto s = uniform_grid({{0, 0}, {10, 10}});
  EXPECT_DOUBLE_EQ(coverage_oracle(s).marginal_bound(), 9.0);
}

TEST(Tracking, UnicycleExamples) {
  TrackingParams p;
  Pose q = unicycle_step({0, 0, 0}, 0.0, p);
  EXPECT_DOUBLE_EQ(q.x, 1.0);
  EXPECT_DOUBLE_EQ(q.y, 0.0);
  EXPECT_DOUBLE_EQ(q.heading, 0.0);
  q = unicycle_step({0, 0, 0}, kPi / 6, p);
  EXPECT_DOUBLE_EQ(q.x, 1.0);
  EXPECT_DOUBLE_EQ(q.heading, kPi / 6);
  // Heading pi from the west wall: (-1, 0) clamps back to (0, 0).
  q = unicycle_step({0, 0, kPi}, 0.0, p);
  EXPECT_NEAR(q.x, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(q.heading, kPi);
  q = unicycle_step({50, 50, kPi}, 0.0, p);
  EXPECT_NEAR(q.x, 49.0, 1e-12);
  EXPECT_NEAR(q.y, 50.0, 1e-12);
}

TEST(Tracking, DisplacementAndWrap) {
  TrackingParams p;
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const Pose a{rng.uniform(10, 90), rng.uniform(10, 90), rng.uniform(-kPi, kPi)};
    const Pose b = unicycle_step(a, rng.uniform(-kPi / 6, kPi / 6), p);
    EXPECT_NEAR(std::hypot(b.x - a.x, b.y - a.y), p.v_a * p.dt, 1e-12);
    EXPECT_GT(b.heading, -kPi);
    EXPECT_LE(b.heading, kPi);
  }
  EXPECT_DOUBLE_EQ(wrap_angle(-kPi), kPi);
  EXPECT_NEAR(wrap_angle(3 * kPi / 2), -kPi / 2, 1e-15);
  const auto rates = steering_rates(p);
  ASSERT_EQ(rates.size(), 12u);
  EXPECT_DOUBLE_EQ(rates.front(), -kPi / 6);
  EXPECT_DOUBLE_EQ(rates.back(), kPi / 6);
}

TrackingState one_on_one(double distance) {
  TrackingState s;
  s.params.num_rates = 1;
  s.params.max_rate = 0.0;
  // The agent at (20,50) heading east predicts (21,50).
  s.agents = {{20, 50, 0}};
  s.agent_active = {true};
  s.targets = {{21 + distance, 50, 0, TargetPattern::kStatic}};
  s.target_active = {true};
  return s;
}

TEST(Tracking, UtilityExamples) {
  const auto a = FeasibleSet::Full(std::vector<int>{0});
  EXPECT_NEAR(tracking_utility(a, one_on_one(5.0)), 0.5, 1e-15);
  EXPECT_EQ(tracking_utility(a, one_on_one(10.0)), 0.0);
  EXPECT_EQ(tracking_utility(a, one_on_one(12.0)), 0.0);
  EXPECT_DOUBLE_EQ(tracking_utility(a, one_on_one(0.0)), 1.0);

  auto two = one_on_one(0.0);
  two.targets.push_back({90, 90, 0, TargetPattern::kStatic});
  two.target_active.push_back(true);
  EXPECT_DOUBLE_EQ(tracking_utility(a, two), 0.5);

  auto empty = one_on_one(0.0);
  empty.target_active = {false};
  EXPECT_EQ(tracking_utility(a, empty), 0.0);
  EXPECT_EQ(tracking_oracle(empty).marginal_bound(), 0.0);
  EXPECT_DOUBLE_EQ(tracking_oracle(two).marginal_bound(), 1.0);
}

TEST(Tracking, TargetSteps) {
  TrackingParams p;
  Rng rng(3);
  const Target still{50, 50, 1.0, TargetPattern::kStatic};
  const auto s = target_step(still, p, rng);
  EXPECT_EQ(s.x, 50.0);
  EXPECT_EQ(s.y, 50.0);
  const Target east{50, 50, 0.0, TargetPattern::kLinear};
  const auto e = target_step(east, p, rng);
  EXPECT_DOUBLE_EQ(e.x, 50.25);
  EXPECT_DOUBLE_EQ(e.y, 50.0);
  TrackingParams never = p;
  never.resample_prob = 0.0;
  Target random = east;
  random.pattern = TargetPattern::kRandom;
  Target linear = east;
  for (int k = 0; k < 50; ++k) {
    random = target_step(random, never, rng);
    linear = target_step(linear, never, rng);
  }
  EXPECT_DOUBLE_EQ(random.x, linear.x);
  EXPECT_DOUBLE_EQ(random.y, linear.y);
  // Reflection at the east wall.
  const Target wall{99.9, 50, 0.0, TargetPattern::kLinear};
  const auto r = target_step(wall, p, rng);
  EXPECT_NEAR(r.x, 99.85, 1e-12);
  EXPECT_NEAR(std::abs(r.direction), kPi, 1e-12);
}

TEST(Tracking, Observation) {
  TrackingState s;
  s.agents = {{50, 50, 0}, {60, 50, 0}, {90, 90, 0}};
  s.agent_active = {true, true, true};
  s.targets = {{10, 10, 0, TargetPattern::kStatic}};
  s.target_active = {true};
  // No target in range: code 0, one neighbor within 25 m.
  EXPECT_EQ(observe_tracking(s, 0), 0u * 3 + 1);
  s.targets = {{52, 50, 0, TargetPattern::kStatic}};
  // Dead ahead: bearing 0 falls in sector 4, range 2 in ring 0.
  EXPECT_EQ(observe_tracking(s, 0), (1u + 3 * 4 + 0) * 3 + 1);
  s.agents[2] = {55, 55, 0};
  EXPECT_EQ(observe_tracking(s, 0), (1u + 3 * 4 + 0) * 3 + 2);
}

TEST(Schedules, OpenAndClosed) {
  Rng rng(5);
  const auto closed = open_schedule(100, 3, 0, 20, 0.5, rng);
  for (std::size_t e = 0; e < 3; ++e) {
    EXPECT_EQ(closed.entities[e].arrival, 1);
    EXPECT_EQ(closed.entities[e].departure, 100);
  }
  Rng a(9), b(9);
  const auto s1 = open_schedule(2500, 2, 10, 400, 0.75, a);
  const auto s2 = open_schedule(2500, 2, 10, 400, 0.75, b);
  for (std::size_t e = 0; e < s1.entities.size(); ++e) {
    EXPECT_EQ(s1.entities[e].arrival, s2.entities[e].arrival);
    EXPECT_EQ(s1.entities[e].departure, s2.entities[e].departure);
    if (e >= 2) {
      EXPECT_LE(s1.entities[e].arrival, 1875);
      EXPECT_GE(s1.entities[e].departure - s1.entities[e].arrival, 400);
      EXPECT_LE(s1.entities[e].departure, 2500);
    }
  }
  EXPECT_THROW(open_schedule(100, 1, 1, 100, 0.5, rng), ConfigError);
  EXPECT_THROW(open_schedule(100, 1, 1, 20, 0.0, rng), ConfigError);
  EXPECT_THROW(open_schedule(100, 1, 3, 20, 0.5, rng, 2), ConfigError);
}

TEST(Instances, PassAssumptionExhaustively) {
  Rng rng(2024);
  for (int k = 0; k < 100; ++k) {
    const auto cov = small_coverage_instance(rng);
    const auto trk = small_tracking_instance(rng);
    EXPECT_LE(cov.matroid().num_agents(), 3u);
    EXPECT_LE(cov.matroid().max_actions(), 3);
    EXPECT_LE(trk.matroid().num_agents(), 3u);
    EXPECT_LE(trk.matroid().max_actions(), 3);
    EXPECT_TRUE(check_assumption(cov, CheckMode::kExhaustive, 0, nullptr).passed());
    EXPECT_TRUE(check_assumption(trk, CheckMode::kExhaustive, 0, nullptr).passed());
    EXPECT_LE(trk.marginal_bound(),
              1.0 / static_cast<double>(trk.matroid().num_agents()) + 1e-15);
  }
}

template <class Env>
std::vector<std::string> digests(Env env, std::uint64_t seed) {
  Rng rng(seed);
  env.reset(rng);
  std::vector<std::string> out{env.digest()};
  Rng act(seed + 1);
  while (!env.done()) {
    const auto f = env.utility();
    FeasibleSet a(f->matroid().num_agents());
    for (std::size_t k = 0; k < a.num_agents(); ++k) {
      a.select(k, static_cast<int>(act.index(f->matroid().actions(k))));
    }
    env.step(a, rng);
    out.push_back(env.digest());
  }
  return out;
}

TEST(Environments, DeterministicDigests) {
  CoverageConfig cov;
  cov.open = true;
  cov.agents = 5;
  cov.horizon = 60;
  cov.density = DensityKind::kBimodal;
  EXPECT_EQ(digests(CoverageEnv(cov), 4), digests(CoverageEnv(cov), 4));
  EXPECT_NE(digests(CoverageEnv(cov), 4), digests(CoverageEnv(cov), 5));
  TrackingConfig trk;
  trk.pattern = "mixed";
  trk.open = true;
  trk.horizon = 600;
  trk.min_lifespan = 100;
  EXPECT_EQ(digests(TrackingEnv(trk), 4), digests(TrackingEnv(trk), 4));
}

TEST(Environments, OpenCoveragePopulation) {
  CoverageConfig cov;
  cov.open = true;
  cov.agents = 5;
  cov.base_agents = 2;
  cov.horizon = 100;
  CoverageEnv env(cov);
  Rng rng(8);
  env.reset(rng);
  EXPECT_GE(env.active_agents().size(), 2u);
  std::size_t most = 0;
  while (!env.done()) {
    most = std::max(most, env.active_agents().size());
    for (int id : env.active_agents()) {
      const Cell c = env.state().positions[id];
      EXPECT_TRUE(c.x >= 0 && c.x < 30 && c.y >= 0 && c.y < 30);
    }
    const auto obs = env.observe();
    ASSERT_EQ(obs.size(), env.active_agents().size());
    env.step(all_stay(obs.size()), rng);
  }
  EXPECT_GT(most, 2u);
}

TEST(Environments, CommunicationGraph) {
  TrackingConfig trk;
  trk.agents = 3;
  trk.targets = 1;
  TrackingEnv env(trk);
  Rng rng(1);
  env.reset(rng);
  const auto g = env.comm_graph();
  const auto& s = env.state();
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_FALSE(g[a][a]);
    for (std::size_t b = 0; b < 3; ++b) {
      const double d = std::hypot(s.agents[a].x - s.agents[b].x, s.agents[a].y - s.agents[b].y);
      if (a != b) EXPECT_EQ(g[a][b], d <= 25.0);
    }
  }
}

TEST(Bandit, SingleRound) {
  auto f = std::make_shared<WeightedCoverage>(overlap_bandit());
  EXPECT_DOUBLE_EQ(brute_force_opt(*f).value, 1.8);
  BanditEnvironment env(f);
  Rng rng(0);
  env.reset(rng);
  EXPECT_EQ(env.observe().size(), 2u);
  EXPECT_EQ(env.observe()[1].mask.size(), 3u);
  env.step(FeasibleSet::Full(std::vector<int>{0, 1}), rng);
  EXPECT_TRUE(env.done());
}

}  // namespace
}  // namespace submapg
