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

#include "submapg/submodular.hpp"

#include <gtest/gtest.h>

#include "submapg/errors.hpp"
#include "submapg/oracles.hpp"
#include "test_util.hpp"

namespace submapg {
namespace {

using testing::for_each_choice;
using testing::to_set;

bool has_kind(const PropertyReport& r, PropertyKind kind) {
  for (const auto& v : r.violations) {
    if (v.kind == kind) return true;
  }
  return false;
}

TEST(PartitionMatroid, Layout) {
  PartitionMatroid m({2, 3, 1});
  EXPECT_EQ(m.ground_size(), 6u);
  EXPECT_EQ(m.offset(2), 5u);
  EXPECT_EQ(m.flat_index({1, 2}), 4u);
  EXPECT_EQ(m.max_actions(), 3);
  EXPECT_EQ(m.independent_set_count(), 3u * 4u * 2u);
  EXPECT_TRUE(m.contains({1, 2}));
  EXPECT_FALSE(m.contains({1, 3}));
  EXPECT_FALSE(m.contains({3, 0}));
}

TEST(FeasibleSet, Independence) {
  PartitionMatroid m({2, 2});
  const std::vector<AgentActionPair> ok{{0, 1}, {1, 0}};
  const std::vector<AgentActionPair> twice{{0, 0}, {0, 1}};
  EXPECT_TRUE(is_feasible(ok, m));
  EXPECT_FALSE(is_feasible(twice, m));
  EXPECT_TRUE(is_feasible({}, m));
  const std::vector<AgentActionPair> bad{{0, 5}};
  EXPECT_THROW(is_feasible(bad, m), ValidationError);
  EXPECT_THROW(FeasibleSet::FromPairs(twice, m), ConstraintViolation);
  EXPECT_THROW(FeasibleSet::FromPairs(bad, m), ValidationError);
}

TEST(FeasibleSet, WithWithout) {
  FeasibleSet a(2);
  a.select(0, 1);
  EXPECT_THROW(a.with({0, 0}), ConstraintViolation);
  const auto b = a.with({1, 0});
  EXPECT_TRUE(b.is_full());
  EXPECT_EQ(b.size(), 2u);
  EXPECT_FALSE(b.without(0).selection(0).has_value());
  EXPECT_EQ(b.without(0).size(), 1u);
}

TEST(FeasibleSet, SubsetsOfFeasibleAreFeasible) {
  PartitionMatroid m({3, 2, 2});
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<AgentActionPair> pairs;
    for (int i = 0; i < 3; ++i) {
      if (rng.bernoulli(0.7)) pairs.push_back({i, static_cast<int>(rng.index(m.actions(i)))});
    }
    ASSERT_TRUE(is_feasible(pairs, m));
    for (std::size_t drop = 0; drop < pairs.size(); ++drop) {
      auto sub = pairs;
      sub.erase(sub.begin() + drop);
      EXPECT_TRUE(is_feasible(sub, m));
    }
  }
}

TEST(MarginalGain, OverlapToy) {
  const auto f = overlap_toy();
  FeasibleSet empty(2);
  EXPECT_DOUBLE_EQ(marginal_gain(f, {0, 0}, empty), 1.0);
  FeasibleSet e2(2);
  e2.select(1, 0);
  EXPECT_DOUBLE_EQ(marginal_gain(f, {0, 0}, e2), 0.5);
  FeasibleSet e1(2);
  e1.select(0, 0);
  EXPECT_THROW(marginal_gain(f, {0, 0}, e1), ConstraintViolation);
}

TEST(MarginalGain, AddsUpToDirectEvaluation) {
  Rng rng(9);
  const auto f = random_weighted_coverage({3, 3, 2}, 10, rng);
  for_each_choice(f.matroid().blocks(), true, [&](const std::vector<int>& picks) {
    const auto a = to_set(picks);
    for (int i = 0; i < 3; ++i) {
      if (picks[i] >= 0) continue;
      for (int act = 0; act < f.matroid().actions(i); ++act) {
        EXPECT_NEAR(marginal_gain(f, {i, act}, a) + f.value(a),
                    f.value(a.with({i, act})), 1e-12);
      }
    }
  });
}

TEST(BruteForceOpt, OverlapToy) {
  const auto best = brute_force_opt(overlap_toy());
  EXPECT_DOUBLE_EQ(best.value, 1.5);
  EXPECT_TRUE(best.set.is_full());
}

TEST(BruteForceOpt, SingleAgentAndZero) {
  ModularOracle f(PartitionMatroid({2}), {0.2, 0.7});
  const auto best = brute_force_opt(f);
  EXPECT_DOUBLE_EQ(best.value, 0.7);
  EXPECT_EQ(best.set.selection(0), 1);
  LambdaOracle zero(PartitionMatroid({2, 2}), [](const FeasibleSet&) { return 0.0; }, 0);
  EXPECT_EQ(brute_force_opt(zero).value, 0.0);
}

TEST(BruteForceOpt, DominatesEverySetAndBreaksTiesLexicographically) {
  Rng rng(2);
  const auto f = random_weighted_coverage({2, 3, 2}, 6, rng);
  const auto best = brute_force_opt(f);
  double max_seen = 0.0;
  for_each_choice(f.matroid().blocks(), true, [&](const std::vector<int>& picks) {
    EXPECT_GE(best.value, f.value(to_set(picks)));
    max_seen = std::max(max_seen, f.value(to_set(picks)));
  });
  EXPECT_EQ(best.value, max_seen);

  // All sets tie: the all-zero selection wins.
  ModularOracle flat(PartitionMatroid({2, 2}), {0.0, 0.0, 0.0, 0.0});
  const auto tie = brute_force_opt(flat);
  EXPECT_EQ(tie.set.selection(0), 0);
  EXPECT_EQ(tie.set.selection(1), 0);
}

TEST(BruteForceOpt, CapExceeded) {
  const auto f = ModularOracle(PartitionMatroid({9, 9, 9}), std::vector<double>(27, 1));
  EXPECT_THROW(brute_force_opt(f, 100), SizeError);
}

TEST(CheckAssumption, CoveragePasses) {
  Rng rng(1);
  const auto f = random_weighted_coverage({2, 2}, 5, rng);
  const auto report = check_assumption(f, CheckMode::kExhaustive, 0, nullptr);
  EXPECT_TRUE(report.passed());
  EXPECT_GT(report.checks, 0u);
}

TEST(CheckAssumption, SupermodularIsCaught) {
  LambdaOracle sq(PartitionMatroid({1, 1, 1}),
                  [](const FeasibleSet& a) {
                    const double n = static_cast<double>(a.size());
                    return n * n;
                  },
                  9.0);
  const auto report = check_assumption(sq, CheckMode::kExhaustive, 0, nullptr);
  EXPECT_TRUE(has_kind(report, PropertyKind::kSubmodularity));
  Rng rng(3);
  EXPECT_FALSE(check_assumption(sq, CheckMode::kSampled, 500, &rng).passed());
}

TEST(CheckAssumption, ZeroAndBoundViolations) {
  LambdaOracle zero(PartitionMatroid({2, 2}), [](const FeasibleSet&) { return 0.0; }, 0);
  EXPECT_TRUE(check_assumption(zero, CheckMode::kExhaustive, 0, nullptr).passed());

  LambdaOracle shifted(PartitionMatroid({1}), [](const FeasibleSet&) { return 1.0; }, 1);
  const auto norm = check_assumption(shifted, CheckMode::kExhaustive, 0, nullptr);
  EXPECT_TRUE(has_kind(norm, PropertyKind::kNormalization));

  // Modular with a declared bound below the largest gain.
  ModularOracle tight(PartitionMatroid({2}), {0.5, 2.0});
  LambdaOracle lying(PartitionMatroid({2}),
                     [&](const FeasibleSet& a) { return tight.value(a); }, 1.0);
  const auto bound = check_assumption(lying, CheckMode::kExhaustive, 0, nullptr);
  EXPECT_TRUE(has_kind(bound, PropertyKind::kMarginalBound));
}

TEST(Oracles, ModularAndMaxScore) {
  ModularOracle f(PartitionMatroid({2, 1}), {0.2, 0.7, 0.4});
  EXPECT_DOUBLE_EQ(f.marginal_bound(), 0.7);
  FeasibleSet a(2);
  a.select(0, 1);
  a.select(1, 0);
  EXPECT_DOUBLE_EQ(f.value(a), 1.1);

  MaxScoreOracle g(PartitionMatroid({1, 1}), {{0.5, 0.2}, {0.0, 0.9}}, 0.5, 1.0);
  const auto both = FeasibleSet::Full(std::vector<int>{0, 0});
  EXPECT_DOUBLE_EQ(g.value(both), 0.5 * (0.5 + 0.9));
  g.set_sensing({{0}, {1}});
  const auto local = g.sensed_by(0);
  EXPECT_DOUBLE_EQ(local->value(both), 0.5 * 0.5);
  EXPECT_THROW(g.value(a), ValidationError);
  EXPECT_THROW(g.value(FeasibleSet(3)), ValidationError);
}

}  // namespace
}  // namespace submapg
