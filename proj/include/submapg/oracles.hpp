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

// Concrete stage utilities. All are normalized, monotone and submodular
// except LambdaOracle, which wraps arbitrary test functions.

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "submapg/submodular.hpp"

namespace submapg {

// F(A) = sum of item weights covered by at least one selected pair.
// Items are summed in ascending index order, so values are reproducible.
class WeightedCoverage final : public SetFunction {
 public:
  // covers[flat pair index] lists the items that pair covers.
  WeightedCoverage(PartitionMatroid m, std::vector<double> weights,
                   std::vector<std::vector<int>> covers);

  const PartitionMatroid& matroid() const override { return m_; }
  double value(const FeasibleSet& a) const override;
  // Largest single-pair coverage mass.
  double marginal_bound() const override { return bound_; }

  std::size_t num_items() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }

 private:
  PartitionMatroid m_;
  std::vector<double> weights_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> masks_;  // ground_size x words_
  double bound_ = 0.0;
};

// F(A) = sum of per-pair weights; every interaction term is zero.
class ModularOracle final : public SetFunction {
 public:
  ModularOracle(PartitionMatroid m, std::vector<double> weights);

  const PartitionMatroid& matroid() const override { return m_; }
  double value(const FeasibleSet& a) const override;
  double marginal_bound() const override { return bound_; }

 private:
  PartitionMatroid m_;
  std::vector<double> weights_;
  double bound_ = 0.0;
};

// F(A) = scale * sum_j max_{e in A} score[j][e], with max over the empty
// set equal to 0. Scores must be nonnegative.
class MaxScoreOracle final : public SetFunction, public LocalSensing {
 public:
  MaxScoreOracle(PartitionMatroid m, std::vector<std::vector<double>> scores,
                 double scale, double bound);

  const PartitionMatroid& matroid() const override { return m_; }
  double value(const FeasibleSet& a) const override;
  double marginal_bound() const override { return bound_; }

  // Optional sensing sets: sensed[i] lists the targets agent i perceives.
  void set_sensing(std::vector<std::vector<int>> sensed) {
    sensed_ = std::move(sensed);
  }
  std::unique_ptr<SetFunction> sensed_by(std::size_t agent) const override;

  std::size_t num_targets() const { return scores_.size(); }

 private:
  PartitionMatroid m_;
  std::vector<std::vector<double>> scores_;  // target x flat pair
  double scale_;
  double bound_;
  std::vector<std::vector<int>> sensed_;
};

// Adapter for ad-hoc test functions.
class LambdaOracle final : public SetFunction {
 public:
  using Fn = std::function<double(const FeasibleSet&)>;
  LambdaOracle(PartitionMatroid m, Fn fn, double bound)
      : m_(std::move(m)), fn_(std::move(fn)), bound_(bound) {}

  const PartitionMatroid& matroid() const override { return m_; }
  double value(const FeasibleSet& a) const override { return fn_(a); }
  double marginal_bound() const override { return bound_; }

 private:
  PartitionMatroid m_;
  Fn fn_;
  double bound_;
};

// Two agents with one action each: F({e1}) = F({e2}) = 1, F({e1,e2}) = 1.5.
WeightedCoverage overlap_toy();

// Random weighted coverage with the given blocks; items drawn per pair.
WeightedCoverage random_weighted_coverage(const std::vector<int>& blocks,
                                          int num_items, Rng& rng);

}  // namespace submapg
