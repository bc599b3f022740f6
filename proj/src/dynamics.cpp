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

#include "submapg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "submapg/errors.hpp"
#include "submapg/oracles.hpp"

namespace submapg {

double step_size_stagewise(double diameter, double gradient, double sigma,
                           std::size_t iterations) {
  if (!(diameter > 0.0) || !(gradient > 0.0) || !(sigma > 0.0) ||
      iterations == 0) {
    throw DomainError("stagewise step size needs positive D, G, sigma, K");
  }
  return diameter / std::sqrt(static_cast<double>(iterations) *
                              (gradient * gradient + sigma * sigma));
}

double step_size_dynamic(double diameter, double path_len, std::size_t horizon,
                         double gradient, double sigma) {
  const double energy = gradient * gradient + sigma * sigma;
  if (horizon == 0 || !(diameter > 0.0) || path_len < 0.0 || !(energy > 0.0)) {
    throw DomainError("dynamic step size needs T >= 1, D > 0, P_T >= 0 and "
                      "G^2 + sigma^2 > 0");
  }
  return std::sqrt(diameter * (diameter + 2.0 * path_len) /
                   (static_cast<double>(horizon) * energy));
}

double regret_bound_rhs(double diameter, double path_len, std::size_t horizon,
                        double gradient, double sigma, double eta) {
  if (!(eta > 0.0) || horizon == 0) {
    throw DomainError("regret bound needs eta > 0 and T >= 1");
  }
  const double energy = gradient * gradient + sigma * sigma;
  return diameter * diameter / (4.0 * eta) +
         diameter * path_len / (2.0 * eta) +
         eta * static_cast<double>(horizon) * energy / 4.0;
}

double regret_bound_optimal(double diameter, double path_len,
                            std::size_t horizon, double gradient,
                            double sigma) {
  if (horizon == 0) throw DomainError("regret bound needs T >= 1");
  const double energy = gradient * gradient + sigma * sigma;
  return 0.5 * std::sqrt(diameter * (diameter + 2.0 * path_len) *
                         static_cast<double>(horizon) * energy);
}

namespace {

GradientVector estimate_gradient(const SetFunction& f, const MarginalVector& x,
                                 GradientEstimator estimator, Rng& rng,
                                 std::uint64_t cap) {
  return estimator == GradientEstimator::kExact
             ? pme_grad_exact(f, x, cap)
             : diff_reward_gradient(f, x, rng);
}

MarginalVector ascent_step(const MarginalVector& x, const GradientVector& g,
                           double eta, const FaceSpec& face) {
  MarginalVector moved = x;
  for (std::size_t c = 0; c < x.size(); ++c) moved[c] += eta * g[c];
  return project_face(moved, face);
}

}  // namespace

StagewiseRun stagewise_sga(const SetFunction& f, const FaceSpec& face,
                           std::size_t iterations, double eta,
                           GradientEstimator estimator, Rng& rng,
                           std::optional<MarginalVector> x0,
                           std::optional<ExplicitBounds> constants) {
  const auto& m = f.matroid();
  if (m.blocks() != face.blocks) {
    throw ShapeError("face layout does not match the oracle's matroid");
  }
  if (iterations == 0) throw ValidationError("need at least one iterate");
  if (eta < 0.0) throw DomainError("step size must be nonnegative");

  StagewiseRun run;
  run.eta = eta;
  const FaceSpec faces[] = {face};
  run.constants = constants ? *constants
                            : diameter_and_bounds(faces, f.marginal_bound(),
                                                  std::max<std::size_t>(1, m.num_agents()),
                                                  std::max(1, m.max_actions()));
  run.opt = brute_force_opt(f).value;
  run.guarantee =
      0.5 * run.opt -
      run.constants.diameter *
          std::sqrt(run.constants.gradient * run.constants.gradient +
                    run.constants.sigma * run.constants.sigma) /
          (2.0 * std::sqrt(static_cast<double>(iterations)));

  MarginalVector x = x0 ? project_face(*x0, face) : uniform_marginals(m);
  run.iterates.reserve(iterations);
  run.values.reserve(iterations);
  double sum = 0.0;
  for (std::size_t k = 0; k < iterations; ++k) {
    const double value = pme_exact(f, x);
    run.iterates.push_back(x);
    run.values.push_back(value);
    sum += value;
    if (k + 1 < iterations) {
      x = ascent_step(x, estimate_gradient(f, x, estimator, rng,
                                           kDefaultEnumerationCap),
                      eta, face);
    }
  }
  run.average_value = sum / static_cast<double>(iterations);
  return run;
}

bool tail_nondecreasing(const StagewiseRun& run, double fraction, double tol) {
  const std::size_t k = run.values.size();
  const auto tail = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(k)));
  const std::size_t start = k > tail ? k - tail : 0;
  for (std::size_t j = std::max<std::size_t>(start, 1); j < k; ++j) {
    if (run.values[j] < run.values[j - 1] - tol) return false;
  }
  return true;
}

MarginalVector two_step_update(const MarginalVector& x, const GradientVector& g,
                               double eta, const FaceSpec& face_t,
                               std::span<const int> ids_t,
                               const FaceSpec& face_next,
                               std::span<const int> ids_next) {
  if (ids_t.size() != face_t.blocks.size() ||
      ids_next.size() != face_next.blocks.size()) {
    throw ShapeError("one agent id per face block is required");
  }
  if (!(g.layout() == x.layout())) throw ShapeError("gradient layout mismatch");
  const MarginalVector stepped = ascent_step(x, g, eta, face_t);

  MarginalVector carried(face_next.layout());
  for (std::size_t k = 0; k < ids_next.size(); ++k) {
    auto dst = carried.block(k);
    const auto it = std::find(ids_t.begin(), ids_t.end(), ids_next[k]);
    if (it == ids_t.end()) {
      std::fill(dst.begin(), dst.end(), 1.0 / static_cast<double>(dst.size()));
      continue;
    }
    const auto src = stepped.block(static_cast<std::size_t>(it - ids_t.begin()));
    const std::size_t n = std::min(src.size(), dst.size());
    std::copy_n(src.begin(), n, dst.begin());
  }
  return project_face(carried, face_next);
}

RegretTrace run_online(OnlineStream& stream, double eta,
                       GradientEstimator estimator, Rng& rng,
                       std::uint64_t cap) {
  if (!(eta > 0.0)) throw DomainError("online step size must be positive");
  const std::size_t horizon = stream.horizon();
  RegretTrace trace;
  trace.eta = eta;
  if (horizon == 0) return trace;

  SlotMap slots(stream.max_agents(), stream.max_actions());
  OnlineRound current = stream.round(0);
  FaceSpec face = FaceSpec::Categorical(current.utility->matroid().blocks());
  for (int id : current.agent_ids) slots.assign(id);
  MarginalVector x = uniform_marginals(current.utility->matroid());

  double bound = 0.0;
  std::size_t n_max = 1;
  std::size_t na_max = 1;
  double cumulative = 0.0;
  std::vector<double> previous_opt;
  for (std::size_t t = 0; t < horizon; ++t) {
    const SetFunction& f = *current.utility;
    const auto& m = f.matroid();
    bound = std::max(bound, f.marginal_bound());
    n_max = std::max(n_max, m.num_agents());
    na_max = std::max<std::size_t>(na_max, m.max_actions());

    RegretRow row;
    row.t = t;
    const auto opt = brute_force_opt(f, cap);
    row.half_opt = 0.5 * opt.value;
    row.achieved = pme_exact(f, x, cap);
    row.instantaneous = row.half_opt - row.achieved;
    cumulative += row.instantaneous;
    row.cumulative = cumulative;
    row.embedded_opt = embed(indicator(opt.set, m), current.agent_ids, slots);
    if (!previous_opt.empty()) {
      const std::vector<double> pair[] = {previous_opt, row.embedded_opt};
      trace.path_length += path_length(pair);
    }
    row.path_length = trace.path_length;
    previous_opt = row.embedded_opt;

    const GradientVector g = estimate_gradient(f, x, estimator, rng, cap);
    FeasibleSet played(m.num_agents());
    product_distribution(x).sample(rng, played);
    stream.advance(played);
    trace.rows.push_back(std::move(row));
    if (t + 1 == horizon) break;

    OnlineRound next = stream.round(t + 1);
    for (int id : current.agent_ids) {
      if (std::find(next.agent_ids.begin(), next.agent_ids.end(), id) ==
          next.agent_ids.end()) {
        slots.release(id);
      }
    }
    for (int id : next.agent_ids) slots.assign(id);
    FaceSpec next_face = FaceSpec::Categorical(next.utility->matroid().blocks());
    x = two_step_update(x, g, eta, face, current.agent_ids, next_face,
                        next.agent_ids);
    face = std::move(next_face);
    current = std::move(next);
  }

  trace.constants = diameter_and_bounds({}, bound, n_max, na_max);
  trace.bound_rhs = regret_bound_rhs(trace.constants.diameter, trace.path_length,
                                     horizon, trace.constants.gradient,
                                     trace.constants.sigma, eta);
  return trace;
}

double optimum_path_length(OnlineStream& stream, std::uint64_t cap) {
  SlotMap slots(stream.max_agents(), stream.max_actions());
  double total = 0.0;
  std::vector<int> previous_ids;
  std::vector<double> previous;
  for (std::size_t t = 0; t < stream.horizon(); ++t) {
    const OnlineRound r = stream.round(t);
    for (int id : previous_ids) {
      if (std::find(r.agent_ids.begin(), r.agent_ids.end(), id) ==
          r.agent_ids.end()) {
        slots.release(id);
      }
    }
    for (int id : r.agent_ids) slots.assign(id);
    const auto opt = brute_force_opt(*r.utility, cap);
    auto v = embed(indicator(opt.set, r.utility->matroid()), r.agent_ids, slots);
    if (!previous.empty()) {
      const std::vector<double> pair[] = {previous, v};
      total += path_length(pair);
    }
    previous = std::move(v);
    previous_ids = r.agent_ids;
    stream.advance(opt.set);
  }
  return total;
}

DriftingCoverageStream::DriftingCoverageStream(const Options& options,
                                               std::uint64_t seed)
    : options_(options), rng_(seed) {
  if (options_.drift < 0.0) throw ValidationError("drift must be >= 0");
  const PartitionMatroid m(options_.blocks);
  Rng layout = rng_.derive(1);
  covers_.resize(m.ground_size());
  for (auto& c : covers_) {
    for (int item = 0; item < options_.items; ++item) {
      if (layout.bernoulli(0.35)) c.push_back(item);
    }
  }
  weights_.resize(options_.items);
  for (auto& w : weights_) w = layout.uniform(0.2, 1.0);
  if (options_.jump) {
    // Odd rounds see every agent's actions shifted by one, so the maximizer
    // moves each round while OPT stays the same.
    shifted_.resize(covers_.size());
    for (std::size_t i = 0; i < m.num_agents(); ++i) {
      const int k = m.actions(i);
      for (int a = 0; a < k; ++a) {
        shifted_[m.offset(i) + a] = covers_[m.offset(i) + (a + 1) % k];
      }
    }
  }
}

std::size_t DriftingCoverageStream::max_actions() const {
  return static_cast<std::size_t>(
      *std::max_element(options_.blocks.begin(), options_.blocks.end()));
}

OnlineRound DriftingCoverageStream::round(std::size_t t) {
  if (t != next_round_) throw ValidationError("rounds must be requested in order");
  if (t > 0 && !options_.jump) {
    for (auto& w : weights_) {
      w = std::clamp(w + rng_.uniform(-options_.drift, options_.drift), 0.05, 1.0);
    }
  }
  ++next_round_;
  const auto& covers = (options_.jump && t % 2 == 1) ? shifted_ : covers_;
  OnlineRound r;
  r.utility = std::make_shared<WeightedCoverage>(PartitionMatroid(options_.blocks),
                                                 weights_, covers);
  r.agent_ids.resize(options_.blocks.size());
  for (std::size_t i = 0; i < r.agent_ids.size(); ++i) {
    r.agent_ids[i] = static_cast<int>(i);
  }
  return r;
}

}  // namespace submapg
