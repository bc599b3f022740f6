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

#include "submapg/baselines.hpp"
#include "submapg/envs/bandit.hpp"
#include "submapg/envs/instances.hpp"
#include "submapg/errors.hpp"
#include "submapg/oracles.hpp"
#include "submapg/pme.hpp"
#include "test_util.hpp"

namespace submapg {
namespace {

using testing::for_each_choice;
using testing::max_value_over_full;
using testing::to_set;

std::vector<std::vector<bool>> complete(std::size_t n) {
  std::vector<std::vector<bool>> g(n, std::vector<bool>(n, true));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = false;
  return g;
}

TEST(BaselineKinds, ParseAndPrint) {
  for (auto k : {BaselineKind::kCsgGlobal, BaselineKind::kCsgLocal,
                 BaselineKind::kOnlineLocalGreedy, BaselineKind::kRandom,
                 BaselineKind::kSharedRewardTrain}) {
    EXPECT_EQ(parse_baseline_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_baseline_kind("osg"), ConfigError);
}

TEST(Csg, OverlapToy) {
  const auto f = overlap_toy();
  const auto a = csg(f);
  EXPECT_EQ(a.selection(0), 0);
  EXPECT_EQ(a.selection(1), 0);
  EXPECT_DOUBLE_EQ(f.value(a), 1.5);
  EXPECT_DOUBLE_EQ(f.value(online_local_greedy(f, complete(2))), 1.5);
}

TEST(Csg, ModularIsOptimal) {
  Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    PartitionMatroid m({3, 2, 4});
    std::vector<double> w(m.ground_size());
    for (double& v : w) v = rng.uniform();
    ModularOracle f(m, w);
    EXPECT_DOUBLE_EQ(f.value(csg(f)), max_value_over_full(f));
  }
}

TEST(Csg, HalfApproximation) {
  Rng rng(12);
  for (int k = 0; k < 200; ++k) {
    const auto f = random_weighted_coverage({3, 3, 2, 3}, 8, rng);
    const auto a = csg(f);
    EXPECT_TRUE(a.is_full());
    EXPECT_GE(f.value(a), 0.5 * max_value_over_full(f) - 1e-12);
    const auto t = small_tracking_instance(rng);
    EXPECT_GE(t.value(csg(t)), 0.5 * max_value_over_full(t) - 1e-12);
  }
}

TEST(Csg, LocalSensingOnTracking) {
  Rng rng(30);
  for (int k = 0; k < 100; ++k) {
    const auto f = small_tracking_instance(rng);
    const auto n = f.matroid().num_agents();
    const auto local = csg(f, Sensing::kLocal);
    EXPECT_TRUE(local.is_full());
    EXPECT_EQ(online_local_greedy(f, complete(n)), local);
  }
  // Coverage exposes no local view, so both modes agree.
  const auto cov = small_coverage_instance(rng);
  EXPECT_EQ(csg(cov, Sensing::kLocal), csg(cov, Sensing::kGlobal));
}

TEST(OnlineLocalGreedy, NoCommunicationIsIndependentArgmax) {
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const auto f = random_weighted_coverage({3, 3, 3}, 7, rng);
    const std::vector<std::vector<bool>> none(3, std::vector<bool>(3, false));
    const auto a = online_local_greedy(f, none);
    for (std::size_t i = 0; i < 3; ++i) {
      double best = -1.0;
      int pick = -1;
      for (int b = 0; b < 3; ++b) {
        FeasibleSet s(3);
        s.select(i, b);
        if (f.value(s) > best) {
          best = f.value(s);
          pick = b;
        }
      }
      EXPECT_EQ(a.selection(i), pick);
    }
  }
  const auto f = random_weighted_coverage({2, 2}, 4, rng);
  EXPECT_THROW(online_local_greedy(f, complete(3)), ShapeError);
}

TEST(RandomPolicy, MatchesExtensionAtUniformMarginals) {
  const auto f = overlap_bandit();
  MarginalVector x(f.matroid());
  for (std::size_t i = 0; i < 2; ++i) {
    for (auto& v : x.block(i)) v = 1.0 / 3.0;
  }
  const double expected = pme_exact(f, x);
  EXPECT_NEAR(expected, 2.1 * 5.0 / 9.0, 1e-12);
  Rng rng(9);
  const int n = 100000;
  double mean = 0.0, sq = 0.0;
  for (int k = 0; k < n; ++k) {
    const auto a = random_policy(f.matroid(), rng);
    EXPECT_TRUE(a.is_full());
    const double v = f.value(a);
    mean += v / n;
    sq += v * v / n;
  }
  EXPECT_NEAR(mean, expected, 4 * std::sqrt((sq - mean * mean) / n));
}

TEST(RandomPolicy, SingleActionAndSeeds) {
  const auto toy = overlap_toy();
  Rng rng(1);
  EXPECT_DOUBLE_EQ(toy.value(random_policy(toy.matroid(), rng)), 1.5);
  Rng a(4), b(4);
  PartitionMatroid m({3, 4, 2});
  for (int k = 0; k < 20; ++k) EXPECT_EQ(random_policy(m, a), random_policy(m, b));
}

TEST(SharedReward, SingleAgentMatchesDifferenceReward) {
  auto f = std::make_shared<WeightedCoverage>(
      WeightedCoverage(PartitionMatroid({3}), {1.0, 0.5, 0.2}, {{0}, {1}, {2}}));
  auto make = [&] { return std::make_unique<BanditEnvironment>(f); };
  TabularSoftmaxPolicy a, b;
  TrainOptions opt;
  opt.episodes = 100;
  opt.eta = 0.3;
  submapg_train(make, a, opt, Rng(7));
  shared_reward_train(make, b, 100, 0.3, Rng(7));
  EXPECT_EQ(a, b);
}

// First episode after which the policy's expected value reaches the target.
std::size_t episodes_to(double target, bool shared, std::uint64_t seed, double eta) {
  auto f = std::make_shared<WeightedCoverage>(overlap_bandit());
  auto make = [&] { return std::make_unique<BanditEnvironment>(f); };
  const BanditEnvironment env(f);
  const auto o = env.observe();
  std::size_t hit = 0;
  bool done = false;
  auto cb = [&](std::size_t k, const Trajectory&, const TabularSoftmaxPolicy& p) {
    if (done) return;
    double value = 0.0;
    for_each_choice(f->matroid().blocks(), false, [&](const std::vector<int>& picks) {
      value += p.probabilities(o[0])[picks[0]] * p.probabilities(o[1])[picks[1]] *
               f->value(to_set(picks));
    });
    if (value >= target) {
      hit = k + 1;
      done = true;
    }
  };
  TabularSoftmaxPolicy p;
  const std::size_t budget = 3000;
  if (shared) {
    shared_reward_train(make, p, budget, eta, Rng(seed), cb);
  } else {
    TrainOptions opt;
    opt.episodes = budget;
    opt.eta = eta;
    submapg_train(make, p, opt, Rng(seed), cb);
  }
  return done ? hit : budget + 1;
}

TEST(SharedReward, NoFasterThanDifferenceReward) {
  double diff = 0.0, shared = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    diff += episodes_to(0.9 * 1.8, false, seed, 1.0) / 10.0;
    shared += episodes_to(0.9 * 1.8, true, seed, 1.0) / 10.0;
  }
  EXPECT_LE(diff, shared);
}

TEST(SharedReward, ZeroStepIsFlat) {
  auto f = std::make_shared<WeightedCoverage>(overlap_bandit());
  TabularSoftmaxPolicy p;
  shared_reward_train([&] { return std::make_unique<BanditEnvironment>(f); }, p, 50,
                      0.0, Rng(1));
  EXPECT_EQ(p.rows(), 0u);
}

}  // namespace
}  // namespace submapg
