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

#include "submapg/polytope.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "submapg/errors.hpp"
#include "test_util.hpp"

namespace submapg {
namespace {

// Projection by bisection on the KKT threshold.
std::vector<double> bisect_projection(const std::vector<double>& v, bool equality) {
  auto clipped_sum = [&](double tau) {
    double s = 0.0;
    for (double x : v) s += std::max(0.0, x - tau);
    return s;
  };
  if (!equality && clipped_sum(0.0) <= 1.0) {
    std::vector<double> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = std::max(0.0, v[k]);
    return out;
  }
  double lo = -10.0, hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (clipped_sum(mid) > 1.0 ? lo : hi) = mid;
  }
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = std::max(0.0, v[k] - lo);
  return out;
}

TEST(ProjectBlock, HandExamples) {
  const std::vector<double> a{0.7, 0.7};
  EXPECT_EQ(project_block(a, true), (std::vector<double>{0.5, 0.5}));
  const std::vector<double> b{0.3, 0.2};
  EXPECT_EQ(project_block(b, false), b);
  const std::vector<double> c{1.2, -0.3};
  const auto pc = project_block(c, true);
  EXPECT_NEAR(pc[0], 1.0, 1e-15);
  EXPECT_NEAR(pc[1], 0.0, 1e-15);
  const std::vector<double> bad{std::nan(""), 0.0};
  EXPECT_THROW(project_block(bad, true), DomainError);
}

TEST(ProjectBlock, MatchesBisection) {
  Rng rng(6);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> v(1 + rng.index(5));
    for (double& x : v) x = rng.uniform(-1.5, 1.5);
    for (bool eq : {true, false}) {
      const auto p = project_block(v, eq);
      const auto q = bisect_projection(v, eq);
      double sum = 0.0;
      for (std::size_t k = 0; k < v.size(); ++k) {
        EXPECT_NEAR(p[k], q[k], 1e-12);
        EXPECT_GE(p[k], 0.0);
        sum += p[k];
      }
      if (eq) {
        EXPECT_NEAR(sum, 1.0, 1e-12);
      } else {
        EXPECT_LE(sum, 1.0 + 1e-12);
      }
    }
  }
}

TEST(ProjectFace, IdempotentAndNonExpansive) {
  const std::vector<int> blocks{3, 2, 4};
  const auto face = FaceSpec::Categorical(blocks);
  const PartitionMatroid m(blocks);
  Rng rng(13);
  for (int t = 0; t < 1000; ++t) {
    MarginalVector u(m), v(m);
    for (double& x : u.values()) x = rng.uniform(-1.0, 2.0);
    for (double& x : v.values()) x = rng.uniform(-1.0, 2.0);
    const auto pu = project_face(u, face);
    const auto pv = project_face(v, face);
    double d_in = 0.0, d_out = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      d_in += (u[k] - v[k]) * (u[k] - v[k]);
      d_out += (pu[k] - pv[k]) * (pu[k] - pv[k]);
    }
    EXPECT_LE(std::sqrt(d_out), std::sqrt(d_in) + 1e-12);
    EXPECT_TRUE(on_face(pu));
    EXPECT_EQ(project_face(pu, face).values(), pu.values());
  }
  MarginalVector twos(PartitionMatroid({2, 2}), {0.7, 0.7, 0.7, 0.7});
  EXPECT_EQ(project_face(twos, FaceSpec::Categorical({2, 2})).values(),
            (std::vector<double>{0.5, 0.5, 0.5, 0.5}));
  EXPECT_THROW(project_face(twos, FaceSpec::Categorical({3, 1})), ShapeError);
}

TEST(SlotMap, AssignReleaseAndEmbed) {
  SlotMap slots(2, 2);
  EXPECT_EQ(slots.assign(10), 0u);
  EXPECT_EQ(slots.assign(11), 1u);
  EXPECT_EQ(slots.assign(10), 0u);
  EXPECT_THROW(slots.assign(12), MappingError);
  slots.release(10);
  EXPECT_EQ(slots.assign(12), 0u);
  EXPECT_EQ(slots.padded_dimension(), 4u);

  SlotMap one(2, 2);
  one.assign(5);
  const MarginalVector x(PartitionMatroid({2}), {0.25, 0.75});
  const std::vector<int> ids{5};
  EXPECT_EQ(embed(x, ids, one), (std::vector<double>{0.25, 0.75, 0.0, 0.0}));
  const std::vector<int> missing{6};
  EXPECT_THROW(embed(x, missing, one), MappingError);
}

TEST(Embed, IsometryAndSwap) {
  Rng rng(3);
  SlotMap slots(3, 3);
  slots.place(1, 2);
  slots.place(2, 0);
  const PartitionMatroid m({3, 2});
  const std::vector<int> ids{1, 2};
  for (int t = 0; t < 100; ++t) {
    MarginalVector x(m, testing::random_face(m, rng));
    const auto e = embed(x, ids, slots);
    EXPECT_DOUBLE_EQ(norm2(e), norm2(x.values()));
  }
  const MarginalVector x(m, {0.1, 0.2, 0.7, 0.4, 0.6});
  const auto e = embed(x, ids, slots);
  EXPECT_EQ(e, (std::vector<double>{0.4, 0.6, 0, 0, 0, 0, 0.1, 0.2, 0.7}));
}

TEST(PathLength, Examples) {
  const std::vector<double> a{0.0, 0.0}, b{0.9, 1.2};
  const std::vector<std::vector<double>> constant{a, a, a};
  EXPECT_EQ(path_length(constant), 0.0);
  const std::vector<std::vector<double>> two{a, b};
  EXPECT_NEAR(path_length(two), 1.5, 1e-15);
  const std::vector<std::vector<double>> back{a, b, a};
  EXPECT_NEAR(path_length(back), 3.0, 1e-15);
  const std::vector<std::vector<double>> ragged{a, {1.0}};
  EXPECT_THROW(path_length(ragged), ShapeError);
}

TEST(ExplicitBounds, Formulas) {
  EXPECT_NEAR(diameter_and_bounds({}, 1.0, 5, 5).diameter, std::sqrt(10.0), 1e-15);
  EXPECT_NEAR(diameter_and_bounds({}, 1.0, 5, 5).diameter, 3.16228, 1e-5);
  EXPECT_DOUBLE_EQ(diameter_and_bounds({}, 1.0, 5, 5).gradient, 5.0);
  EXPECT_DOUBLE_EQ(diameter_and_bounds({}, 1.0, 1, 3).diameter, std::sqrt(2.0));
  const std::vector<FaceSpec> faces{FaceSpec::Categorical({4})};
  EXPECT_THROW(diameter_and_bounds(faces, 1.0, 1, 3), ValidationError);
}

TEST(ExplicitBounds, DominateMeasuredDiameter) {
  // Largest distance between face vertices of N agents is sqrt(2N).
  const PartitionMatroid m({3, 3});
  const auto b = diameter_and_bounds({}, 1.0, 2, 3);
  double worst = 0.0;
  testing::for_each_choice(m.blocks(), false, [&](const std::vector<int>& p) {
    testing::for_each_choice(m.blocks(), false, [&](const std::vector<int>& q) {
      const auto x = indicator(testing::to_set(p), m);
      const auto y = indicator(testing::to_set(q), m);
      double d = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) d += (x[k] - y[k]) * (x[k] - y[k]);
      worst = std::max(worst, std::sqrt(d));
    });
  });
  EXPECT_NEAR(worst, b.diameter, 1e-15);
}

}  // namespace
}  // namespace submapg
