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

#include "submapg/policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "submapg/errors.hpp"

namespace submapg {

std::vector<double> masked_softmax(std::span<const double> logits,
                                   const std::vector<bool>& mask) {
  if (mask.size() != logits.size()) {
    throw ShapeError("mask and logits differ in length");
  }
  double top = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t a = 0; a < logits.size(); ++a) {
    if (!std::isfinite(logits[a])) throw DomainError("non-finite logit");
    if (mask[a]) {
      top = std::max(top, logits[a]);
      any = true;
    }
  }
  if (!any) throw InfeasibleError("every action is masked");
  std::vector<double> p(logits.size(), 0.0);
  double total = 0.0;
  for (std::size_t a = 0; a < logits.size(); ++a) {
    if (mask[a]) {
      p[a] = std::exp(logits[a] - top);
      total += p[a];
    }
  }
  for (double& v : p) v /= total;
  return p;
}

namespace {

RowKey key_of(const AgentObservation& o) { return {o.slot, o.key}; }

}  // namespace

std::vector<double> TabularSoftmaxPolicy::logits(const AgentObservation& o) const {
  auto it = table_.find(key_of(o));
  if (it == table_.end()) return std::vector<double>(o.mask.size(), 0.0);
  if (it->second.size() != o.mask.size()) {
    throw ShapeError("observation mask does not match the stored row");
  }
  return it->second;
}

std::vector<double>& TabularSoftmaxPolicy::row(const AgentObservation& o) {
  auto [it, inserted] =
      table_.try_emplace(key_of(o), std::vector<double>(o.mask.size(), 0.0));
  if (it->second.size() != o.mask.size()) {
    throw ShapeError("observation mask does not match the stored row");
  }
  return it->second;
}

std::vector<double> TabularSoftmaxPolicy::probabilities(
    const AgentObservation& o) const {
  return masked_softmax(logits(o), o.mask);
}

MarginalVector TabularSoftmaxPolicy::marginals(
    std::span<const AgentObservation> obs) const {
  std::vector<int> blocks;
  std::vector<double> data;
  for (const auto& o : obs) {
    blocks.push_back(static_cast<int>(o.mask.size()));
    const auto p = probabilities(o);
    data.insert(data.end(), p.begin(), p.end());
  }
  return MarginalVector(PartitionMatroid(std::move(blocks)), std::move(data));
}

FeasibleSet TabularSoftmaxPolicy::sample(std::span<const AgentObservation> obs,
                                         Rng& rng) const {
  FeasibleSet a(obs.size());
  for (std::size_t k = 0; k < obs.size(); ++k) {
    const auto p = probabilities(obs[k]);
    const double u = rng.uniform();
    double acc = 0.0;
    int pick = -1;
    for (std::size_t b = 0; b < p.size(); ++b) {
      if (!obs[k].mask[b]) continue;
      pick = static_cast<int>(b);
      acc += p[b];
      if (u < acc) break;
    }
    a.select(k, pick);
  }
  return a;
}

FeasibleSet TabularSoftmaxPolicy::greedy(
    std::span<const AgentObservation> obs) const {
  FeasibleSet a(obs.size());
  for (std::size_t k = 0; k < obs.size(); ++k) {
    const auto p = probabilities(obs[k]);
    int pick = -1;
    for (std::size_t b = 0; b < p.size(); ++b) {
      if (obs[k].mask[b] && (pick < 0 || p[b] > p[pick])) pick = static_cast<int>(b);
    }
    a.select(k, pick);
  }
  return a;
}

void TabularSoftmaxPolicy::apply(const PolicyGradient& g, double eta) {
  for (const auto& [key, grad] : g) {
    auto [it, inserted] =
        table_.try_emplace(key, std::vector<double>(grad.size(), 0.0));
    if (it->second.size() != grad.size()) {
      throw ShapeError("gradient row does not match the stored row");
    }
    for (std::size_t a = 0; a < grad.size(); ++a) it->second[a] += eta * grad[a];
  }
}

void TabularSoftmaxPolicy::save(std::ostream& out) const {
  char buf[64];
  for (const auto& [key, row] : table_) {
    for (std::size_t a = 0; a < row.size(); ++a) {
      std::snprintf(buf, sizeof buf, "%.17g", row[a]);
      out << key.first << '\t' << key.second << '\t' << a << '\t' << buf << '\n';
    }
  }
}

TabularSoftmaxPolicy TabularSoftmaxPolicy::load(std::istream& in) {
  TabularSoftmaxPolicy p;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    int slot = 0;
    std::uint64_t key = 0;
    std::size_t action = 0;
    double logit = 0.0;
    if (!(fields >> slot >> key >> action >> logit)) {
      throw ValidationError("malformed checkpoint line " + std::to_string(line_no));
    }
    auto& row = p.table_[{slot, key}];
    if (action != row.size()) {
      throw ValidationError("checkpoint actions out of order at line " +
                            std::to_string(line_no));
    }
    row.push_back(logit);
  }
  return p;
}

std::vector<double> score_check(const TabularSoftmaxPolicy& p,
                                const AgentObservation& o, int action) {
  if (action < 0 || static_cast<std::size_t>(action) >= o.mask.size() ||
      !o.mask[action]) {
    throw ValidationError("score of an unavailable action");
  }
  auto g = p.probabilities(o);
  for (double& v : g) v = -v;
  g[action] += 1.0;
  for (std::size_t a = 0; a < g.size(); ++a) {
    if (!o.mask[a]) g[a] = 0.0;
  }
  return g;
}

PolicyGradient exact_stage_gradient(const TabularSoftmaxPolicy& p,
                                    std::span<const AgentObservation> obs,
                                    const SetFunction& f) {
  const MarginalVector x = p.marginals(obs);
  const GradientVector g = pme_grad_exact(f, x);
  PolicyGradient out;
  for (std::size_t k = 0; k < obs.size(); ++k) {
    const auto probs = x.block(k);
    const auto grad = g.block(k);
    double mean = 0.0;
    for (std::size_t a = 0; a < probs.size(); ++a) mean += probs[a] * grad[a];
    auto& row = out.try_emplace(key_of(obs[k]), std::vector<double>(probs.size(), 0.0))
                    .first->second;
    for (std::size_t a = 0; a < probs.size(); ++a) {
      if (obs[k].mask[a]) row[a] += probs[a] * (grad[a] - mean);
    }
  }
  return out;
}

double ReturnBaseline::value(const RowKey& key) const {
  if (mode_ == BaselineMode::kNone) return 0.0;
  auto it = average_.find(key);
  return it == average_.end() ? 0.0 : it->second;
}

void ReturnBaseline::update(const RowKey& key, double observed) {
  if (mode_ == BaselineMode::kNone) return;
  auto [it, inserted] = average_.try_emplace(key, observed);
  if (!inserted) it->second = decay_ * it->second + (1.0 - decay_) * observed;
}

std::vector<std::vector<double>> suffix_returns(const Trajectory& traj) {
  std::vector<std::vector<double>> g(traj.size());
  std::map<int, double> running;
  for (std::size_t t = traj.size(); t-- > 0;) {
    const auto& r = traj[t];
    g[t].resize(r.observations.size());
    for (std::size_t k = 0; k < r.observations.size(); ++k) {
      double& acc = running[r.observations[k].slot];
      acc += r.rewards.at(k);
      g[t][k] = acc;
    }
  }
  return g;
}

std::vector<std::vector<double>> difference_returns(const Trajectory& traj,
                                                    ReturnBaseline& baseline) {
  auto psi = suffix_returns(traj);
  const auto g = psi;
  for (std::size_t t = 0; t < traj.size(); ++t) {
    for (std::size_t k = 0; k < psi[t].size(); ++k) {
      psi[t][k] -= baseline.value(key_of(traj[t].observations[k]));
    }
  }
  for (std::size_t t = 0; t < traj.size(); ++t) {
    for (std::size_t k = 0; k < g[t].size(); ++k) {
      baseline.update(key_of(traj[t].observations[k]), g[t][k]);
    }
  }
  return psi;
}

std::vector<std::vector<double>> difference_returns(const Trajectory& traj) {
  ReturnBaseline none;
  return difference_returns(traj, none);
}

PolicyGradient surrogate_gradient(const TabularSoftmaxPolicy& p,
                                  const Trajectory& traj,
                                  const std::vector<std::vector<double>>& psi) {
  if (psi.size() != traj.size()) throw ShapeError("returns do not match trajectory");
  PolicyGradient out;
  for (std::size_t t = 0; t < traj.size(); ++t) {
    const auto& r = traj[t];
    for (std::size_t k = 0; k < r.observations.size(); ++k) {
      const auto& o = r.observations[k];
      const auto score = score_check(p, o, *r.joint.selection(k));
      auto& row = out.try_emplace(key_of(o), std::vector<double>(o.mask.size(), 0.0))
                      .first->second;
      for (std::size_t a = 0; a < score.size(); ++a) row[a] += score[a] * psi[t][k];
    }
  }
  return out;
}

Trajectory rollout(Environment& env, const TabularSoftmaxPolicy& p,
                   RewardMode mode, Rng& rng, bool record_opt) {
  Rng env_rng = rng.derive(0);
  Rng act_rng = rng.derive(1);
  env.reset(env_rng);
  Trajectory traj;
  while (!env.done()) {
    RoundRecord r;
    r.observations = env.observe();
    r.targets = env.active_targets();
    r.digest = env.digest();
    const auto f = env.utility();
    if (record_opt) r.opt = brute_force_opt(*f).value;
    r.joint = p.sample(r.observations, act_rng);
    r.value = f->value(r.joint);
    for (std::size_t k = 0; k < r.observations.size(); ++k) {
      r.counterfactual.push_back(f->value(r.joint.without(k)));
      r.rewards.push_back(mode == RewardMode::kDifference
                              ? r.value - r.counterfactual.back()
                              : r.value);
    }
    env.step(r.joint, env_rng);
    traj.push_back(std::move(r));
  }
  return traj;
}

std::vector<EpisodeStats> submapg_train(const EnvFactory& make_env,
                                        TabularSoftmaxPolicy& p,
                                        const TrainOptions& options,
                                        const Rng& rng,
                                        const EpisodeCallback& callback) {
  ReturnBaseline baseline(options.baseline);
  std::vector<EpisodeStats> curve;
  curve.reserve(options.episodes);
  auto env = make_env();
  for (std::size_t k = 0; k < options.episodes; ++k) {
    Rng episode_rng = rng.derive(k);
    const Trajectory traj =
        rollout(*env, p, options.reward, episode_rng, options.record_opt);
    const auto psi = difference_returns(traj, baseline);
    const PolicyGradient g = surrogate_gradient(p, traj, psi);
    if (options.eta != 0.0) p.apply(g, options.eta);
    EpisodeStats stats{k, 0.0};
    for (const auto& r : traj) stats.episode_return += r.value;
    curve.push_back(stats);
    if (callback) callback(k, traj, p);
  }
  return curve;
}

}  // namespace submapg
