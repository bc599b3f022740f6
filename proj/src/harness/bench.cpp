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

#include "submapg/harness/bench.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "submapg/baselines.hpp"
#include "submapg/envs/coverage.hpp"
#include "submapg/errors.hpp"
#include "submapg/pme.hpp"
#include "submapg/polytope.hpp"

namespace submapg {

BenchConfig parse_bench(const ConfigFile& file) {
  if (file.empty()) throw ConfigError("bench needs a non-empty config with [bench]");
  BenchConfig c;
  const std::string s = "bench";
  const auto repeats = file.get_int(s, "repeats", 20);
  if (repeats <= 0) file.fail(s, "repeats", "must be positive");
  c.repeats = static_cast<std::size_t>(repeats);
  c.max_agents = static_cast<int>(file.get_int(s, "max_agents", c.max_agents));
  if (c.max_agents <= 0 || c.max_agents > 8) file.fail(s, "max_agents", "must lie in [1, 8]");
  c.actions = static_cast<int>(file.get_int(s, "actions", c.actions));
  if (c.actions <= 0 || c.actions > 5) file.fail(s, "actions", "must lie in [1, 5]");
  c.episode_horizon =
      static_cast<int>(file.get_int(s, "episode_horizon", c.episode_horizon));
  if (c.episode_horizon <= 0) file.fail(s, "episode_horizon", "must be positive");
  c.seed = file.get_u64(s, "seed", c.seed);
  file.require_all_used();
  return c;
}

namespace {

template <class Fn>
double per_call_ms(std::size_t repeats, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t r = 0; r < repeats; ++r) fn();
  const std::chrono::duration<double, std::milli> spent =
      std::chrono::steady_clock::now() - start;
  return spent.count() / static_cast<double>(repeats);
}

volatile double g_sink = 0.0;

}  // namespace

std::vector<BenchRow> bench(const BenchConfig& c) {
  std::vector<BenchRow> rows;
  Rng rng(c.seed);
  for (int n = 1; n <= c.max_agents; ++n) {
    const std::vector<int> blocks(n, c.actions);
    const auto f = random_weighted_coverage(blocks, 16, rng);
    const auto x = uniform_marginals(f.matroid());
    const std::string size = std::to_string(n) + "x" + std::to_string(c.actions);
    rows.push_back({"pme_exact", size,
                    per_call_ms(c.repeats, [&] { g_sink = pme_exact(f, x); }),
                    per_call_ms(c.repeats, [&] { g_sink = reference::pme_exact(f, x); })});
    rows.push_back(
        {"pme_grad_exact", size,
         per_call_ms(c.repeats, [&] { g_sink = pme_grad_exact(f, x)[0]; }),
         per_call_ms(c.repeats, [&] { g_sink = reference::pme_grad_exact(f, x)[0]; })});
    const FaceSpec face = FaceSpec::Categorical(blocks);
    MarginalVector v(f.matroid());
    for (double& e : v.values()) e = rng.uniform(-1.0, 2.0);
    rows.push_back({"project_face", size,
                    per_call_ms(c.repeats, [&] { g_sink = project_face(v, face)[0]; }),
                    0.0});
    CoverageConfig cov;
    cov.width = 10;
    cov.height = 10;
    cov.agents = n;
    cov.horizon = c.episode_horizon;
    CoverageEnv env(cov);
    rows.push_back({"coverage_episode_csg", std::to_string(n) + "x5",
                    per_call_ms(c.repeats,
                                [&] {
                                  Rng ep(c.seed);
                                  env.reset(ep);
                                  while (!env.done()) {
                                    const auto u = env.utility();
                                    env.step(csg(*u), ep);
                                  }
                                }),
                    0.0});
  }
  return rows;
}

std::string format_bench(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-22s %-6s %14s %14s\n", "component", "size",
                "parallel_ms", "reference_ms");
  os << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-22s %-6s %14.6f %14s\n", r.component.c_str(),
                  r.size.c_str(), r.parallel_ms,
                  r.reference_ms > 0.0 ? std::to_string(r.reference_ms).c_str() : "-");
    os << line;
  }
  return os.str();
}

}  // namespace submapg
