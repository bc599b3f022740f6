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

// Partition multilinear extension: the expected utility of a product of
// per-agent categorical distributions, each with an explicit idle outcome
// carrying mass 1 - sum_a x_(i,a).

#include <cstdint>
#include <span>
#include <vector>

#include "submapg/kernels.hpp"
#include "submapg/rng.hpp"
#include "submapg/submodular.hpp"

namespace submapg {

// Flat per-agent blocks laid out like the matroid's ground set.
template <class Tag>
class BlockVector {
 public:
  BlockVector() = default;
  explicit BlockVector(PartitionMatroid layout)
      : layout_(std::move(layout)), data_(layout_.ground_size(), 0.0) {}
  BlockVector(PartitionMatroid layout, std::vector<double> data)
      : layout_(std::move(layout)), data_(std::move(data)) {
    if (data_.size() != layout_.ground_size()) {
      throw_shape_error();
    }
  }

  const PartitionMatroid& layout() const { return layout_; }
  std::size_t size() const { return data_.size(); }
  std::size_t num_agents() const { return layout_.num_agents(); }

  double& operator[](std::size_t flat) { return data_[flat]; }
  double operator[](std::size_t flat) const { return data_[flat]; }
  double& at(AgentActionPair e) { return data_[layout_.flat_index(e)]; }
  double at(AgentActionPair e) const { return data_[layout_.flat_index(e)]; }

  std::span<double> block(std::size_t agent) {
    return std::span<double>(data_).subspan(layout_.offset(agent),
                                            layout_.actions(agent));
  }
  std::span<const double> block(std::size_t agent) const {
    return std::span<const double>(data_).subspan(layout_.offset(agent),
                                                  layout_.actions(agent));
  }

  const std::vector<double>& values() const { return data_; }
  std::vector<double>& values() { return data_; }

 private:
  [[noreturn]] static void throw_shape_error();

  PartitionMatroid layout_;
  std::vector<double> data_;
};

struct MarginalTag {};
struct GradientTag {};
using MarginalVector = BlockVector<MarginalTag>;
using GradientVector = BlockVector<GradientTag>;

inline constexpr double kPolytopeTolerance = 1e-12;

double idle_mass(const MarginalVector& x, std::size_t agent);

// Entries in [0,1] and per-agent sums <= 1, within `tol`.
bool in_polytope(const MarginalVector& x, double tol = kPolytopeTolerance);
// In the polytope with every per-agent sum equal to 1 within `tol`.
bool on_face(const MarginalVector& x, double tol = kPolytopeTolerance);
// Throws DomainError when x is outside the polytope.
void require_in_polytope(const MarginalVector& x,
                         double tol = kPolytopeTolerance);

MarginalVector uniform_marginals(const PartitionMatroid& m);
MarginalVector indicator(const FeasibleSet& a, const PartitionMatroid& m);

// D(x) with agents in `fixed` pinned to the given choice (nullopt = idle)
// instead of drawn from x.
ProductDistribution product_distribution(
    const MarginalVector& x,
    std::span<const std::pair<std::size_t, std::optional<int>>> fixed = {});

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double max_abs(std::span<const double> a);

// sum_{A in I} F(A) prod_i p_i(A; x).
double pme_exact(const SetFunction& f, const MarginalVector& x,
                 std::uint64_t cap = kDefaultEnumerationCap);

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// n independent draws A ~ D(x). Advances `rng` by one value.
Estimate pme_monte_carlo(const SetFunction& f, const MarginalVector& x,
                         std::uint64_t n, Rng& rng);

// d f~/d x_(i,a) = E_{A^-i ~ D^-i(x)}[F((i,a) | A^-i)].
GradientVector pme_grad_exact(const SetFunction& f, const MarginalVector& x,
                              std::uint64_t cap = kDefaultEnumerationCap);

// Central differences of pme_exact, one-sided where x +/- h e would leave the
// polytope.
GradientVector pme_grad_fd(const SetFunction& f, const MarginalVector& x,
                           double h = 1e-5,
                           std::uint64_t cap = kDefaultEnumerationCap);

// One joint draw A ~ D(x); coordinate (i,a) is F((i,a) | A^-i), where A^-i
// removes agent i's own draw.
GradientVector diff_reward_gradient(const SetFunction& f,
                                    const MarginalVector& x, Rng& rng);

struct GradientEstimate {
  GradientVector mean;
  GradientVector stderr_;
  // Mean of ||g - reference||^2 when a reference gradient is supplied.
  double mean_sq_error = 0.0;
};

// Averages n independent diff_reward_gradient draws in parallel. When
// `reference` is given, also reports the empirical E||g - reference||^2.
GradientEstimate diff_reward_gradient_mean(
    const SetFunction& f, const MarginalVector& x, std::uint64_t n, Rng& rng,
    const GradientVector* reference = nullptr);

// E_{A ~ D^-{i,u}(x)}[F(e | A + other) - F(e | A)] for e = (i,a),
// other = (u,v). Identically 0 when i == u.
double pme_second_diff(const SetFunction& f, const MarginalVector& x,
                       AgentActionPair e, AgentActionPair other,
                       std::uint64_t cap = kDefaultEnumerationCap);

// 1/2 <grad f~(x), y - x> - 1/2 f~(y) + f~(x). Nonnegative for x, y on the
// categorical face when F is monotone submodular.
double restricted_dr_slack(const SetFunction& f, const MarginalVector& x,
                           const MarginalVector& y,
                           std::uint64_t cap = kDefaultEnumerationCap);

namespace reference {

// Serial counterparts of the parallel PME kernels.
double pme_exact(const SetFunction& f, const MarginalVector& x,
                 std::uint64_t cap = kDefaultEnumerationCap);
GradientVector pme_grad_exact(const SetFunction& f, const MarginalVector& x,
                              std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace reference

}  // namespace submapg
