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

// Projected stochastic gradient ascent on the categorical face: repeated
// steps on one fixed stage utility, and the two-step online dynamics that
// follow a changing utility and agent population, with regret bookkeeping.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "submapg/pme.hpp"
#include "submapg/polytope.hpp"
#include "submapg/rng.hpp"
#include "submapg/submodular.hpp"

namespace submapg {

enum class GradientEstimator { kExact, kDifferenceReward };

// D / sqrt(K (G^2 + sigma^2)).
double step_size_stagewise(double diameter, double gradient, double sigma,
                           std::size_t iterations);

// sqrt(D (D + 2 P_T) / (T (G^2 + sigma^2))).
double step_size_dynamic(double diameter, double path_len, std::size_t horizon,
                         double gradient, double sigma);

// D^2/(4 eta) + D P_T/(2 eta) + eta T (G^2 + sigma^2)/4.
double regret_bound_rhs(double diameter, double path_len, std::size_t horizon,
                        double gradient, double sigma, double eta);

// 1/2 sqrt(D (D + 2 P_T) T (G^2 + sigma^2)): the value of regret_bound_rhs
// at the minimizing step size.
double regret_bound_optimal(double diameter, double path_len,
                            std::size_t horizon, double gradient, double sigma);

struct StagewiseRun {
  std::vector<MarginalVector> iterates;  // x_0 .. x_{K-1}
  std::vector<double> values;            // exact PME at each iterate
  double average_value = 0.0;            // (1/K) sum_k f~(x_k)
  double opt = 0.0;                      // brute-force OPT_t
  double eta = 0.0;
  ExplicitBounds constants;
  // 1/2 OPT - D sqrt(G^2 + sigma^2) / (2 sqrt K)
  double guarantee = 0.0;
};

// x_{k+1} = Proj_face(x_k + eta g_k) for K iterates starting from x0
// (uniform per block by default). Constants default to diameter_and_bounds
// of this single face.
StagewiseRun stagewise_sga(const SetFunction& f, const FaceSpec& face,
                           std::size_t iterations, double eta,
                           GradientEstimator estimator, Rng& rng,
                           std::optional<MarginalVector> x0 = std::nullopt,
                           std::optional<ExplicitBounds> constants = std::nullopt);

// True when the PME values over the last `fraction` of the run never drop
// by more than `tol` from one iterate to the next.
bool tail_nondecreasing(const StagewiseRun& run, double fraction = 0.1,
                        double tol = 1e-9);

// Step on face_t, carry blocks across by agent id (arrivals start uniform,
// departures are dropped), then project onto face_next.
MarginalVector two_step_update(const MarginalVector& x, const GradientVector& g,
                               double eta, const FaceSpec& face_t,
                               std::span<const int> ids_t,
                               const FaceSpec& face_next,
                               std::span<const int> ids_next);

struct OnlineRound {
  std::shared_ptr<const SetFunction> utility;
  std::vector<int> agent_ids;  // one per matroid block
};

// Source of per-round utilities for run_online. Rounds are requested in
// order; advance() reports the joint action sampled from the current
// marginals so state-dependent streams can evolve.
class OnlineStream {
 public:
  virtual ~OnlineStream() = default;
  virtual std::size_t horizon() const = 0;
  virtual std::size_t max_agents() const = 0;
  virtual std::size_t max_actions() const = 0;
  virtual OnlineRound round(std::size_t t) = 0;
  virtual void advance(const FeasibleSet& /*played*/) {}
};

struct RegretRow {
  std::size_t t = 0;
  double half_opt = 0.0;       // 1/2 OPT_t
  double achieved = 0.0;       // f~_t(x_t)
  double instantaneous = 0.0;  // half_opt - achieved
  double cumulative = 0.0;
  double path_length = 0.0;    // proxy path length up to round t
  std::vector<double> embedded_opt;
};

struct RegretTrace {
  std::vector<RegretRow> rows;
  double path_length = 0.0;
  double eta = 0.0;
  ExplicitBounds constants;
  double bound_rhs = 0.0;  // Eq. (master) with the measured proxy path length
  double cumulative_regret() const {
    return rows.empty() ? 0.0 : rows.back().cumulative;
  }
};

// Two-step dynamics over the stream. The path length is measured on the
// embedded indicator of each round's brute-force maximizer.
RegretTrace run_online(OnlineStream& stream, double eta,
                       GradientEstimator estimator, Rng& rng,
                       std::uint64_t cap = kDefaultEnumerationCap);

// Proxy path length of a stream whose utilities do not depend on play.
double optimum_path_length(OnlineStream& stream,
                           std::uint64_t cap = kDefaultEnumerationCap);

// Weighted coverage whose item weights follow a bounded random walk with
// per-round steps of at most `drift` (0 = stationary). With `jump` the
// weights stay fixed and odd rounds cyclically shift every agent's action
// labels, so the maximizer changes every round.
class DriftingCoverageStream final : public OnlineStream {
 public:
  struct Options {
    std::vector<int> blocks{3, 3, 3};
    int items = 8;
    std::size_t horizon = 2000;
    double drift = 0.01;
    bool jump = false;
  };

  DriftingCoverageStream(const Options& options, std::uint64_t seed);

  std::size_t horizon() const override { return options_.horizon; }
  std::size_t max_agents() const override { return options_.blocks.size(); }
  std::size_t max_actions() const override;
  OnlineRound round(std::size_t t) override;

 private:
  Options options_;
  Rng rng_;
  std::vector<std::vector<int>> covers_;
  std::vector<double> weights_;
  std::vector<std::vector<int>> shifted_;
  std::size_t next_round_ = 0;
};

}  // namespace submapg
