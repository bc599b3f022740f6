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
#include <sstream>

#include "submapg/envs/bandit.hpp"
#include "submapg/errors.hpp"
#include "submapg/oracles.hpp"
#include "submapg/policy.hpp"
#include "test_util.hpp"

namespace submapg {
namespace {

using testing::for_each_choice;
using testing::to_set;

AgentObservation obs(int slot, std::uint64_t key, std::vector<bool> mask) {
  return {slot, key, std::move(mask)};
}

// E_{A ~ pi}[F(A)] by enumeration over full joint actions.
double expected_value(const TabularSoftmaxPolicy& p,
                      const std::vector<AgentObservation>& o, const SetFunction& f) {
  double total = 0.0;
  for_each_choice(f.matroid().blocks(), false, [&](const std::vector<int>& picks) {
    double w = 1.0;
    for (std::size_t k = 0; k < picks.size(); ++k) w *= p.probabilities(o[k])[picks[k]];
    total += w * f.value(to_set(picks));
  });
  return total;
}

TEST(Softmax, Examples) {
  const std::vector<double> zeros{0, 0, 0};
  auto p = masked_softmax(zeros, {true, true, true});
  for (double v : p) EXPECT_DOUBLE_EQ(v, 1.0 / 3.0);
  const std::vector<double> l{std::log(2.0), 0.0, 5.0};
  p = masked_softmax(l, {true, true, false});
  EXPECT_DOUBLE_EQ(p[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(p[1], 1.0 / 3.0);
  EXPECT_EQ(p[2], 0.0);
  const std::vector<double> big{1000.0, 999.0};
  p = masked_softmax(big, {true, true});
  EXPECT_NEAR(p[0], 1.0 / (1.0 + std::exp(-1.0)), 1e-15);
  EXPECT_THROW(masked_softmax(zeros, {false, false, false}), InfeasibleError);
  EXPECT_THROW(masked_softmax(zeros, {true, true}), ShapeError);
  const std::vector<double> nan{0.0, std::nan("")};
  EXPECT_THROW(masked_softmax(nan, {true, true}), DomainError);
}

TEST(Score, Examples) {
  TabularSoftmaxPolicy p;
  auto s = score_check(p, obs(0, 0, {true, true, true}), 1);
  EXPECT_DOUBLE_EQ(s[0], -1.0 / 3.0);
  EXPECT_DOUBLE_EQ(s[1], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s[2], -1.0 / 3.0);
  s = score_check(p, obs(0, 0, {true, false, true}), 0);
  EXPECT_DOUBLE_EQ(s[0], 0.5);
  EXPECT_EQ(s[1], 0.0);
  EXPECT_DOUBLE_EQ(s[2], -0.5);
  EXPECT_THROW(score_check(p, obs(0, 0, {true, false, true}), 1), ValidationError);
}

TEST(Score, MatchesFiniteDifferencesOfLogProbability) {
  Rng rng(4);
  TabularSoftmaxPolicy p;
  const auto o = obs(2, 7, {true, false, true, true});
  PolicyGradient init{{{2, 7}, {rng.normal(), rng.normal(), rng.normal(), rng.normal()}}};
  p.apply(init, 1.0);
  for (int action : {0, 2, 3}) {
    const auto s = score_check(p, o, action);
    for (std::size_t j = 0; j < 4; ++j) {
      const double h = 1e-6;
      auto up = p, down = p;
      up.row(o)[j] += h;
      down.row(o)[j] -= h;
      const double fd = (std::log(up.probabilities(o)[action]) -
                         std::log(down.probabilities(o)[action])) / (2 * h);
      EXPECT_NEAR(s[j], fd, 1e-8);
    }
  }
  // Mean score is zero under the policy.
  const auto probs = p.probabilities(o);
  std::vector<double> mean(4, 0.0);
  for (int action : {0, 2, 3}) {
    const auto s = score_check(p, o, action);
    for (std::size_t j = 0; j < 4; ++j) mean[j] += probs[action] * s[j];
  }
  for (double v : mean) EXPECT_NEAR(v, 0.0, 1e-15);
}

TEST(Policy, SampleFrequencies) {
  TabularSoftmaxPolicy p;
  const auto o = obs(0, 1, {true, true, false, true});
  p.apply({{{0, 1}, {0.0, std::log(2.0), 3.0, std::log(3.0)}}}, 1.0);
  Rng rng(11);
  std::vector<int> counts(4, 0);
  const int n = 60000;
  const std::vector<AgentObservation> one{o};
  for (int k = 0; k < n; ++k) ++counts[*p.sample(one, rng).selection(0)];
  EXPECT_EQ(counts[2], 0);
  EXPECT_NEAR(counts[0] / double(n), 1.0 / 6.0, 0.01);
  EXPECT_NEAR(counts[1] / double(n), 2.0 / 6.0, 0.01);
  EXPECT_NEAR(counts[3] / double(n), 3.0 / 6.0, 0.01);
  EXPECT_EQ(*p.greedy(one).selection(0), 3);
  TabularSoftmaxPolicy flat;
  EXPECT_EQ(*flat.greedy(one).selection(0), 0);
}

TEST(Returns, SuffixSums) {
  Trajectory traj(3);
  const std::vector<double> rewards{1, 2, 4};
  for (std::size_t t = 0; t < 3; ++t) {
    traj[t].observations = {obs(0, t, {true})};
    traj[t].rewards = {rewards[t]};
    traj[t].joint = FeasibleSet::Full(std::vector<int>{0});
  }
  const auto g = suffix_returns(traj);
  EXPECT_EQ(g[0][0], 7.0);
  EXPECT_EQ(g[1][0], 6.0);
  EXPECT_EQ(g[2][0], 4.0);
  // Slot 3 is only active in the last two rounds.
  traj[1].observations.push_back(obs(3, 0, {true}));
  traj[1].rewards.push_back(10);
  traj[2].observations.push_back(obs(3, 0, {true}));
  traj[2].rewards.push_back(5);
  const auto h = suffix_returns(traj);
  EXPECT_EQ(h[0].size(), 1u);
  EXPECT_EQ(h[1][1], 15.0);
  EXPECT_EQ(h[2][1], 5.0);
}

TEST(Returns, BaselineReadsBeforeUpdate) {
  Trajectory traj(1);
  traj[0].observations = {obs(0, 0, {true})};
  traj[0].rewards = {2.0};
  ReturnBaseline b(BaselineMode::kMovingAverage, 0.5);
  EXPECT_EQ(difference_returns(traj, b)[0][0], 2.0);
  EXPECT_EQ(b.value({0, 0}), 2.0);
  traj[0].rewards = {4.0};
  EXPECT_EQ(difference_returns(traj, b)[0][0], 2.0);
  EXPECT_EQ(b.value({0, 0}), 3.0);
  ReturnBaseline none;
  difference_returns(traj, none);
  EXPECT_EQ(none.value({0, 0}), 0.0);
}

TabularSoftmaxPolicy random_policy_table(const WeightedCoverage& f, Rng& rng) {
  TabularSoftmaxPolicy p;
  PolicyGradient g;
  for (std::size_t k = 0; k < f.matroid().num_agents(); ++k) {
    std::vector<double> row(f.matroid().actions(k));
    for (double& v : row) v = rng.normal();
    g[{static_cast<int>(k), 0}] = row;
  }
  p.apply(g, 1.0);
  return p;
}

TEST(Gradient, ExactMatchesFiniteDifferencesOfExpectedValue) {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_weighted_coverage({3, 2, 3}, 6, rng);
    auto p = random_policy_table(f, rng);
    BanditEnvironment env(std::make_shared<WeightedCoverage>(f));
    const auto o = env.observe();
    const auto exact = exact_stage_gradient(p, o, f);
    for (const auto& [key, row] : exact) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        const double h = 1e-5;
        auto up = p, down = p;
        up.row(o[key.first])[j] += h;
        down.row(o[key.first])[j] -= h;
        const double fd = (expected_value(up, o, f) - expected_value(down, o, f)) / (2 * h);
        EXPECT_NEAR(row[j], fd, 1e-8);
      }
    }
  }
}

void expect_estimator_unbiased(RewardMode mode, BaselineMode baseline) {
  Rng rng(17);
  const auto f = random_weighted_coverage({3, 3}, 5, rng);
  const auto p = random_policy_table(f, rng);
  BanditEnvironment env(std::make_shared<WeightedCoverage>(f));
  const auto exact = exact_stage_gradient(p, env.observe(), f);
  ReturnBaseline b(baseline);
  PolicyGradient mean;
  const int n = 40000;
  for (int k = 0; k < n; ++k) {
    Rng ep = rng.derive(k);
    const auto traj = rollout(env, p, mode, ep);
    const auto g = surrogate_gradient(p, traj, difference_returns(traj, b));
    for (const auto& [key, row] : g) {
      auto& m = mean.try_emplace(key, std::vector<double>(row.size(), 0.0)).first->second;
      for (std::size_t j = 0; j < row.size(); ++j) m[j] += row[j] / n;
    }
  }
  for (const auto& [key, row] : exact) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      EXPECT_NEAR(mean.at(key)[j], row[j], 0.02) << key.first << ":" << j;
    }
  }
}

TEST(Gradient, DifferenceRewardEstimatorIsUnbiased) {
  expect_estimator_unbiased(RewardMode::kDifference, BaselineMode::kNone);
}

TEST(Gradient, MovingAverageBaselineKeepsMean) {
  expect_estimator_unbiased(RewardMode::kDifference, BaselineMode::kMovingAverage);
}

TEST(Gradient, SharedRewardEstimatorIsUnbiased) {
  expect_estimator_unbiased(RewardMode::kShared, BaselineMode::kNone);
}

TEST(Gradient, ExactStepIsAscent) {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_weighted_coverage({3, 2, 3}, 6, rng);
    auto p = random_policy_table(f, rng);
    BanditEnvironment env(std::make_shared<WeightedCoverage>(f));
    const auto o = env.observe();
    const auto g = exact_stage_gradient(p, o, f);
    double norm = 0.0;
    for (const auto& [key, row] : g) {
      for (double v : row) norm += v * v;
    }
    const double before = expected_value(p, o, f);
    p.apply(g, 1e-3);
    if (norm > 1e-12) EXPECT_GT(expected_value(p, o, f), before);
  }
}

TEST(Training, ZeroStepLeavesPolicyFlat) {
  auto f = std::make_shared<WeightedCoverage>(overlap_bandit());
  TabularSoftmaxPolicy p;
  TrainOptions opt;
  opt.episodes = 200;
  opt.eta = 0.0;
  const auto curve = submapg_train(
      [&] { return std::make_unique<BanditEnvironment>(f); }, p, opt, Rng(3));
  EXPECT_EQ(p.rows(), 0u);
  double mean = 0.0;
  for (const auto& s : curve) mean += s.episode_return / curve.size();
  // Uniform play covers each item with probability 5/9.
  EXPECT_NEAR(mean, 2.1 * 5.0 / 9.0, 0.06);
}

TEST(Training, LearnsOverlapBandit) {
  auto f = std::make_shared<WeightedCoverage>(overlap_bandit());
  TabularSoftmaxPolicy p;
  TrainOptions opt;
  opt.episodes = 2000;
  opt.eta = 0.5;
  submapg_train([&] { return std::make_unique<BanditEnvironment>(f); }, p, opt, Rng(3));
  BanditEnvironment env(f);
  const auto o = env.observe();
  EXPECT_GT(expected_value(p, o, *f), 0.95 * 1.8);
}

TEST(Training, DeterministicGivenSeed) {
  auto f = std::make_shared<WeightedCoverage>(overlap_bandit());
  auto make = [&] { return std::make_unique<BanditEnvironment>(f); };
  TrainOptions opt;
  opt.episodes = 100;
  opt.baseline = BaselineMode::kMovingAverage;
  TabularSoftmaxPolicy a, b;
  submapg_train(make, a, opt, Rng(42));
  submapg_train(make, b, opt, Rng(42));
  EXPECT_EQ(a, b);
}

TEST(Checkpoint, RoundTrip) {
  auto f = std::make_shared<WeightedCoverage>(overlap_bandit());
  TabularSoftmaxPolicy p;
  TrainOptions opt;
  opt.episodes = 50;
  submapg_train([&] { return std::make_unique<BanditEnvironment>(f); }, p, opt, Rng(1));
  std::stringstream ss;
  p.save(ss);
  EXPECT_EQ(TabularSoftmaxPolicy::load(ss), p);
  std::stringstream bad("0\t0\t1\t0.5\n");
  EXPECT_THROW(TabularSoftmaxPolicy::load(bad), ValidationError);
  std::stringstream junk("0 zero 1\n");
  EXPECT_THROW(TabularSoftmaxPolicy::load(junk), ValidationError);
}

}  // namespace
}  // namespace submapg
