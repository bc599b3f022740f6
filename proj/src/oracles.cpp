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

#include "submapg/oracles.hpp"

#include <algorithm>
#include <bit>

#include "submapg/errors.hpp"

namespace submapg {

WeightedCoverage::WeightedCoverage(PartitionMatroid m,
                                   std::vector<double> weights,
                                   std::vector<std::vector<int>> covers)
    : m_(std::move(m)), weights_(std::move(weights)) {
  if (covers.size() != m_.ground_size()) {
    throw ShapeError("coverage lists must match the ground set size");
  }
  for (double w : weights_) {
    if (!(w >= 0.0)) throw ValidationError("coverage weights must be >= 0");
  }
  words_ = (weights_.size() + 63) / 64;
  masks_.assign(covers.size() * words_, 0);
  for (std::size_t e = 0; e < covers.size(); ++e) {
    double mass = 0.0;
    for (int item : covers[e]) {
      if (item < 0 || static_cast<std::size_t>(item) >= weights_.size()) {
        throw ValidationError("coverage item out of range");
      }
      auto& word = masks_[e * words_ + item / 64];
      const std::uint64_t bit = std::uint64_t{1} << (item % 64);
      if (!(word & bit)) mass += weights_[item];
      word |= bit;
    }
    bound_ = std::max(bound_, mass);
  }
}

double WeightedCoverage::value(const FeasibleSet& a) const {
  require_member(a, m_);
  std::uint64_t local[16];
  std::vector<std::uint64_t> heap;
  std::uint64_t* covered = local;
  if (words_ > 16) {
    heap.assign(words_, 0);
    covered = heap.data();
  } else {
    std::fill(local, local + words_, 0);
  }
  for (std::size_t i = 0; i < a.num_agents(); ++i) {
    const auto& s = a.selection(i);
    if (!s) continue;
    const std::uint64_t* mask =
        &masks_[m_.flat_index({static_cast<int>(i), *s}) * words_];
    for (std::size_t w = 0; w < words_; ++w) covered[w] |= mask[w];
  }
  double total = 0.0;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = covered[w];
    while (bits) {
      const int b = std::countr_zero(bits);
      total += weights_[w * 64 + b];
      bits &= bits - 1;
    }
  }
  return total;
}

ModularOracle::ModularOracle(PartitionMatroid m, std::vector<double> weights)
    : m_(std::move(m)), weights_(std::move(weights)) {
  if (weights_.size() != m_.ground_size()) {
    throw ShapeError("modular weights must match the ground set size");
  }
  for (double w : weights_) {
    if (!(w >= 0.0)) throw ValidationError("modular weights must be >= 0");
    bound_ = std::max(bound_, w);
  }
}

double ModularOracle::value(const FeasibleSet& a) const {
  require_member(a, m_);
  double total = 0.0;
  for (std::size_t i = 0; i < a.num_agents(); ++i) {
    if (const auto& s = a.selection(i)) {
      total += weights_[m_.flat_index({static_cast<int>(i), *s})];
    }
  }
  return total;
}

MaxScoreOracle::MaxScoreOracle(PartitionMatroid m,
                               std::vector<std::vector<double>> scores,
                               double scale, double bound)
    : m_(std::move(m)), scores_(std::move(scores)), scale_(scale),
      bound_(bound) {
  for (const auto& row : scores_) {
    if (row.size() != m_.ground_size()) {
      throw ShapeError("score rows must match the ground set size");
    }
    for (double w : row) {
      if (!(w >= 0.0)) throw ValidationError("scores must be >= 0");
    }
  }
}

double MaxScoreOracle::value(const FeasibleSet& a) const {
  require_member(a, m_);
  double total = 0.0;
  for (const auto& row : scores_) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.num_agents(); ++i) {
      if (const auto& s = a.selection(i)) {
        best = std::max(best, row[m_.flat_index({static_cast<int>(i), *s})]);
      }
    }
    total += best;
  }
  return scale_ * total;
}

std::unique_ptr<SetFunction> MaxScoreOracle::sensed_by(std::size_t agent) const {
  if (sensed_.empty()) return std::make_unique<MaxScoreOracle>(*this);
  std::vector<std::vector<double>> rows;
  for (int j : sensed_.at(agent)) rows.push_back(scores_.at(j));
  return std::make_unique<MaxScoreOracle>(m_, std::move(rows), scale_, bound_);
}

WeightedCoverage overlap_toy() {
  // Items: one private to each agent, one shared, each of weight 0.5.
  return WeightedCoverage(PartitionMatroid({1, 1}), {0.5, 0.5, 0.5},
                          {{0, 2}, {1, 2}});
}

WeightedCoverage random_weighted_coverage(const std::vector<int>& blocks,
                                          int num_items, Rng& rng) {
  PartitionMatroid m(blocks);
  std::vector<double> weights(num_items);
  for (auto& w : weights) w = rng.uniform(0.1, 1.0);
  std::vector<std::vector<int>> covers(m.ground_size());
  for (auto& c : covers) {
    for (int item = 0; item < num_items; ++item) {
      if (rng.bernoulli(0.35)) c.push_back(item);
    }
  }
  return WeightedCoverage(std::move(m), std::move(weights), std::move(covers));
}

}  // namespace submapg
