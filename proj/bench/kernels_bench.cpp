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

#include <benchmark/benchmark.h>

#include "submapg/oracles.hpp"
#include "submapg/pme.hpp"

namespace submapg {
namespace {

WeightedCoverage instance(int agents) {
  Rng rng(7);
  return random_weighted_coverage(std::vector<int>(static_cast<std::size_t>(agents), 3),
                                  4 * agents, rng);
}

MarginalVector interior(const PartitionMatroid& m) {
  MarginalVector x(m);
  for (double& v : x.values()) v = 0.25;
  return x;
}

void BM_PmeExactParallel(benchmark::State& state) {
  const auto f = instance(static_cast<int>(state.range(0)));
  const auto x = interior(f.matroid());
  for (auto _ : state) benchmark::DoNotOptimize(pme_exact(f, x));
}

void BM_PmeExactReference(benchmark::State& state) {
  const auto f = instance(static_cast<int>(state.range(0)));
  const auto x = interior(f.matroid());
  for (auto _ : state) benchmark::DoNotOptimize(reference::pme_exact(f, x));
}

void BM_PmeGradParallel(benchmark::State& state) {
  const auto f = instance(static_cast<int>(state.range(0)));
  const auto x = interior(f.matroid());
  for (auto _ : state) benchmark::DoNotOptimize(pme_grad_exact(f, x));
}

void BM_PmeGradReference(benchmark::State& state) {
  const auto f = instance(static_cast<int>(state.range(0)));
  const auto x = interior(f.matroid());
  for (auto _ : state) benchmark::DoNotOptimize(reference::pme_grad_exact(f, x));
}

void BM_SampleMomentsParallel(benchmark::State& state) {
  const auto f = instance(4);
  const auto x = interior(f.matroid());
  const auto dist = product_distribution(x);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const SampleFn fn = [&](Rng& rng, std::span<double> out) {
    FeasibleSet a(f.matroid().num_agents());
    dist.sample(rng, a);
    out[0] = f.value(a);
  };
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sample_moments(n, 1, Rng(1), fn));
}

void BM_SampleMomentsReference(benchmark::State& state) {
  const auto f = instance(4);
  const auto x = interior(f.matroid());
  const auto dist = product_distribution(x);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const SampleFn fn = [&](Rng& rng, std::span<double> out) {
    FeasibleSet a(f.matroid().num_agents());
    dist.sample(rng, a);
    out[0] = f.value(a);
  };
  for (auto _ : state) benchmark::DoNotOptimize(reference::sample_moments(n, 1, Rng(1), fn));
}

BENCHMARK(BM_PmeExactParallel)->DenseRange(2, 7);
BENCHMARK(BM_PmeExactReference)->DenseRange(2, 7);
BENCHMARK(BM_PmeGradParallel)->DenseRange(2, 6);
BENCHMARK(BM_PmeGradReference)->DenseRange(2, 6);
BENCHMARK(BM_SampleMomentsParallel)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_SampleMomentsReference)->Arg(1 << 14)->Arg(1 << 18);

}  // namespace
}  // namespace submapg

BENCHMARK_MAIN();
