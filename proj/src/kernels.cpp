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

#include "submapg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "submapg/errors.hpp"

namespace submapg {

ProductDistribution::ProductDistribution(
    std::vector<std::vector<Outcome>> agents) {
  agents_.reserve(agents.size());
  for (auto& outcomes : agents) {
    std::vector<Outcome> kept;
    for (const auto& o : outcomes) {
      if (o.prob != 0.0) kept.push_back(o);
    }
    if (kept.empty()) {
      // All mass vanished; the agent idles with certainty.
      kept.push_back({std::nullopt, 1.0});
    }
    agents_.push_back(std::move(kept));
  }
}

std::uint64_t ProductDistribution::support_size() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t n = 1;
  for (const auto& a : agents_) {
    if (n > kMax / a.size()) return kMax;
    n *= a.size();
  }
  return n;
}

void ProductDistribution::sample(Rng& rng, FeasibleSet& out) const {
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    const auto& outcomes = agents_[i];
    const double u = rng.uniform();
    double cumulative = 0.0;
    std::optional<int> choice = outcomes.back().action;
    for (const auto& o : outcomes) {
      cumulative += o.prob;
      if (u < cumulative) {
        choice = o.action;
        break;
      }
    }
    out.assign(i, choice);
  }
}

namespace {

void require_support(const ProductDistribution& dist, std::uint64_t cap) {
  if (dist.support_size() > cap) {
    throw SizeError("support of " + std::to_string(dist.support_size()) +
                    " joint outcomes exceeds enumeration cap " +
                    std::to_string(cap));
  }
}

// Adds weight * fn(A) for joint outcomes [begin, end) in mixed-radix order
// (last agent fastest).
void accumulate_range(const ProductDistribution& dist, std::uint64_t begin,
                      std::uint64_t end, std::span<double> sink,
                      std::span<double> scratch, const VectorFn& fn) {
  const std::size_t n = dist.num_agents();
  std::vector<std::size_t> digit(n, 0);
  std::uint64_t rest = begin;
  for (std::size_t pos = n; pos-- > 0;) {
    const auto radix = dist.outcomes(pos).size();
    digit[pos] = static_cast<std::size_t>(rest % radix);
    rest /= radix;
  }
  FeasibleSet set(n);
  for (std::size_t i = 0; i < n; ++i) set.assign(i, dist.outcomes(i)[digit[i]].action);

  for (std::uint64_t idx = begin; idx < end; ++idx) {
    double weight = 1.0;
    for (std::size_t i = 0; i < n; ++i) weight *= dist.outcomes(i)[digit[i]].prob;
    fn(set, scratch);
    for (std::size_t d = 0; d < sink.size(); ++d) sink[d] += weight * scratch[d];
    for (std::size_t pos = n; pos-- > 0;) {
      const auto outcomes = dist.outcomes(pos);
      if (++digit[pos] < outcomes.size()) {
        set.assign(pos, outcomes[digit[pos]].action);
        break;
      }
      digit[pos] = 0;
      set.assign(pos, outcomes[0].action);
    }
  }
}

struct Welford {
  std::uint64_t count = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  explicit Welford(std::size_t dim) : mean(dim, 0.0), m2(dim, 0.0) {}

  void add(std::span<const double> x) {
    ++count;
    const double n = static_cast<double>(count);
    for (std::size_t d = 0; d < x.size(); ++d) {
      const double delta = x[d] - mean[d];
      mean[d] += delta / n;
      m2[d] += delta * (x[d] - mean[d]);
    }
  }

  // Chan et al. pairwise combination.
  void merge(const Welford& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double n = na + nb;
    for (std::size_t d = 0; d < mean.size(); ++d) {
      const double delta = other.mean[d] - mean[d];
      mean[d] += delta * nb / n;
      m2[d] += other.m2[d] + delta * delta * na * nb / n;
    }
    count += other.count;
  }

  Moments finish() const {
    Moments out;
    out.count = count;
    out.mean = mean;
    out.variance.assign(mean.size(), 0.0);
    out.stderr_.assign(mean.size(), 0.0);
    if (count > 1) {
      const double n = static_cast<double>(count);
      for (std::size_t d = 0; d < mean.size(); ++d) {
        out.variance[d] = std::max(0.0, m2[d] / (n - 1.0));
        out.stderr_[d] = std::sqrt(out.variance[d] / n);
      }
    }
    return out;
  }
};

Welford sample_chunk(std::uint64_t chunk, std::uint64_t n, std::size_t dim,
                     const Rng& base, const SampleFn& fn) {
  Welford acc(dim);
  Rng stream = base.derive(chunk);
  std::vector<double> scratch(dim);
  const std::uint64_t begin = chunk * kernels::kSampleChunk;
  const std::uint64_t end = std::min(n, begin + kernels::kSampleChunk);
  for (std::uint64_t s = begin; s < end; ++s) {
    std::fill(scratch.begin(), scratch.end(), 0.0);
    fn(stream, scratch);
    acc.add(scratch);
  }
  return acc;
}

}  // namespace

namespace kernels {

std::vector<double> expectation(const ProductDistribution& dist,
                                std::size_t dim, const VectorFn& fn,
                                std::uint64_t cap) {
  require_support(dist, cap);
  const std::uint64_t total = dist.support_size();
  const std::uint64_t chunks = std::min<std::uint64_t>(total, 64);
  std::vector<double> partial(chunks * dim, 0.0);

#pragma omp parallel
  {
    std::vector<double> scratch(dim);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
      const auto uc = static_cast<std::uint64_t>(c);
      accumulate_range(dist, uc * total / chunks, (uc + 1) * total / chunks,
                       std::span<double>(partial).subspan(uc * dim, dim),
                       scratch, fn);
    }
  }

  std::vector<double> out(dim, 0.0);
  for (std::uint64_t c = 0; c < chunks; ++c) {
    for (std::size_t d = 0; d < dim; ++d) out[d] += partial[c * dim + d];
  }
  return out;
}

Moments sample_moments(std::uint64_t n, std::size_t dim, const Rng& base,
                       const SampleFn& fn) {
  const std::uint64_t chunks = (n + kSampleChunk - 1) / kSampleChunk;
  std::vector<Welford> partial(chunks, Welford(dim));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    partial[c] = sample_chunk(static_cast<std::uint64_t>(c), n, dim, base, fn);
  }
  Welford total(dim);
  for (const auto& p : partial) total.merge(p);
  return total.finish();
}

}  // namespace kernels

namespace reference {

namespace {

void recurse(const ProductDistribution& dist, std::size_t agent, double weight,
             FeasibleSet& set, std::span<double> scratch,
             std::vector<double>& out, const VectorFn& fn) {
  if (agent == dist.num_agents()) {
    fn(set, scratch);
    for (std::size_t d = 0; d < out.size(); ++d) out[d] += weight * scratch[d];
    return;
  }
  for (const auto& o : dist.outcomes(agent)) {
    set.assign(agent, o.action);
    recurse(dist, agent + 1, weight * o.prob, set, scratch, out, fn);
  }
}

}  // namespace

std::vector<double> expectation(const ProductDistribution& dist,
                                std::size_t dim, const VectorFn& fn,
                                std::uint64_t cap) {
  require_support(dist, cap);
  std::vector<double> out(dim, 0.0);
  std::vector<double> scratch(dim);
  FeasibleSet set(dist.num_agents());
  recurse(dist, 0, 1.0, set, scratch, out, fn);
  return out;
}

Moments sample_moments(std::uint64_t n, std::size_t dim, const Rng& base,
                       const SampleFn& fn) {
  const std::uint64_t chunks = (n + kernels::kSampleChunk - 1) / kernels::kSampleChunk;
  Welford total(dim);
  for (std::uint64_t c = 0; c < chunks; ++c) {
    total.merge(sample_chunk(c, n, dim, base, fn));
  }
  return total.finish();
}

}  // namespace reference

}  // namespace submapg
