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

#include "submapg/pme.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "submapg/errors.hpp"

namespace submapg {

template <class Tag>
void BlockVector<Tag>::throw_shape_error() {
  throw ShapeError("vector length does not match its block layout");
}

template class BlockVector<MarginalTag>;
template class BlockVector<GradientTag>;

double idle_mass(const MarginalVector& x, std::size_t agent) {
  const auto b = x.block(agent);
  return 1.0 - std::accumulate(b.begin(), b.end(), 0.0);
}

bool in_polytope(const MarginalVector& x, double tol) {
  for (std::size_t i = 0; i < x.num_agents(); ++i) {
    double sum = 0.0;
    for (double v : x.block(i)) {
      if (!(v >= -tol && v <= 1.0 + tol)) return false;
      sum += v;
    }
    if (sum > 1.0 + tol) return false;
  }
  return true;
}

bool on_face(const MarginalVector& x, double tol) {
  if (!in_polytope(x, tol)) return false;
  for (std::size_t i = 0; i < x.num_agents(); ++i) {
    if (std::abs(idle_mass(x, i)) > tol) return false;
  }
  return true;
}

void require_in_polytope(const MarginalVector& x, double tol) {
  if (!in_polytope(x, tol)) {
    throw DomainError("marginal vector lies outside the partition polytope");
  }
}

MarginalVector uniform_marginals(const PartitionMatroid& m) {
  MarginalVector x(m);
  for (std::size_t i = 0; i < m.num_agents(); ++i) {
    for (double& v : x.block(i)) v = 1.0 / m.actions(i);
  }
  return x;
}

MarginalVector indicator(const FeasibleSet& a, const PartitionMatroid& m) {
  if (a.num_agents() != m.num_agents()) {
    throw ShapeError("set and matroid disagree on the agent count");
  }
  MarginalVector x(m);
  for (const auto& e : a.pairs()) x.at(e) = 1.0;
  return x;
}

namespace {

using Pin = std::pair<std::size_t, std::optional<int>>;

// Idle mass is taken verbatim (not clamped) when `signed_idle` is set, which
// evaluates the multilinear polynomial slightly outside the polytope.
ProductDistribution make_distribution(const MarginalVector& x,
                                      std::span<const Pin> fixed,
                                      bool signed_idle) {
  std::vector<std::vector<Outcome>> agents(x.num_agents());
  for (std::size_t i = 0; i < x.num_agents(); ++i) {
    auto pin = std::find_if(fixed.begin(), fixed.end(),
                            [i](const Pin& p) { return p.first == i; });
    if (pin != fixed.end()) {
      agents[i] = {{pin->second, 1.0}};
      continue;
    }
    const auto b = x.block(i);
    double sum = 0.0;
    for (std::size_t a = 0; a < b.size(); ++a) {
      agents[i].push_back({static_cast<int>(a), b[a]});
      sum += b[a];
    }
    const double idle = 1.0 - sum;
    agents[i].push_back({std::nullopt, signed_idle ? idle : std::max(0.0, idle)});
  }
  return ProductDistribution(std::move(agents));
}

double polynomial_value(const SetFunction& f, const MarginalVector& x,
                        std::uint64_t cap) {
  const auto dist = make_distribution(x, {}, /*signed_idle=*/true);
  return kernels::expectation(
      dist, 1, [&f](const FeasibleSet& a, std::span<double> out) {
        out[0] = f.value(a);
      }, cap)[0];
}

void require_layout(const SetFunction& f, const MarginalVector& x) {
  if (!(f.matroid() == x.layout())) {
    throw ShapeError("marginal layout does not match the oracle's matroid");
  }
}

// Writes F((i,a) | A) for every a into out, with A's agent-i slot idle.
void agent_marginals(const SetFunction& f, std::size_t agent, FeasibleSet& a,
                     std::span<double> out) {
  a.clear(agent);
  const double base = f.value(a);
  for (std::size_t k = 0; k < out.size(); ++k) {
    a.select(agent, static_cast<int>(k));
    out[k] = f.value(a) - base;
  }
  a.clear(agent);
}

template <class Expectation>
GradientVector grad_exact_impl(const SetFunction& f, const MarginalVector& x,
                               std::uint64_t cap, Expectation&& expect) {
  require_layout(f, x);
  require_in_polytope(x);
  GradientVector g(x.layout());
  for (std::size_t i = 0; i < x.num_agents(); ++i) {
    const Pin pin{i, std::nullopt};
    const auto dist = make_distribution(x, std::span<const Pin>(&pin, 1), false);
    const auto k = static_cast<std::size_t>(x.layout().actions(i));
    const auto col = expect(
        dist, k,
        [&f, i](const FeasibleSet& ctx, std::span<double> out) {
          FeasibleSet a = ctx;
          agent_marginals(f, i, a, out);
        },
        cap);
    std::copy(col.begin(), col.end(), g.block(i).begin());
  }
  return g;
}

}  // namespace

ProductDistribution product_distribution(const MarginalVector& x,
                                         std::span<const Pin> fixed) {
  return make_distribution(x, fixed, false);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeError("dot of unequal lengths");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double pme_exact(const SetFunction& f, const MarginalVector& x,
                 std::uint64_t cap) {
  require_layout(f, x);
  require_in_polytope(x);
  const auto dist = product_distribution(x);
  return kernels::expectation(
      dist, 1, [&f](const FeasibleSet& a, std::span<double> out) {
        out[0] = f.value(a);
      }, cap)[0];
}

Estimate pme_monte_carlo(const SetFunction& f, const MarginalVector& x,
                         std::uint64_t n, Rng& rng) {
  require_layout(f, x);
  require_in_polytope(x);
  if (n == 0) throw ValidationError("Monte-Carlo needs at least one sample");
  const auto dist = product_distribution(x);
  const Rng base = rng.split();
  const auto moments = kernels::sample_moments(
      n, 1, base, [&](Rng& stream, std::span<double> out) {
        FeasibleSet a(dist.num_agents());
        dist.sample(stream, a);
        out[0] = f.value(a);
      });
  return {moments.mean[0], moments.stderr_[0]};
}

GradientVector pme_grad_exact(const SetFunction& f, const MarginalVector& x,
                              std::uint64_t cap) {
  return grad_exact_impl(f, x, cap, [](auto&&... args) {
    return kernels::expectation(args...);
  });
}

GradientVector pme_grad_fd(const SetFunction& f, const MarginalVector& x,
                           double h, std::uint64_t cap) {
  require_layout(f, x);
  require_in_polytope(x);
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  GradientVector g(x.layout());
  const double center = polynomial_value(f, x, cap);
  for (std::size_t c = 0; c < x.size(); ++c) {
    const bool forward = x[c] + h <= 1.0;
    const bool backward = x[c] - h >= 0.0;
    MarginalVector probe = x;
    if (forward && backward) {
      probe[c] = x[c] + h;
      const double up = polynomial_value(f, probe, cap);
      probe[c] = x[c] - h;
      const double down = polynomial_value(f, probe, cap);
      g[c] = (up - down) / (2.0 * h);
    } else if (forward) {
      probe[c] = x[c] + h;
      g[c] = (polynomial_value(f, probe, cap) - center) / h;
    } else if (backward) {
      probe[c] = x[c] - h;
      g[c] = (center - polynomial_value(f, probe, cap)) / h;
    } else {
      throw DomainError("finite-difference step does not fit in [0, 1]");
    }
  }
  return g;
}

namespace {

void diff_reward_sample(const SetFunction& f, const ProductDistribution& dist,
                        const PartitionMatroid& m, Rng& rng,
                        std::span<double> out) {
  FeasibleSet a(m.num_agents());
  dist.sample(rng, a);
  for (std::size_t i = 0; i < m.num_agents(); ++i) {
    const std::optional<int> own = a.selection(i);
    agent_marginals(f, i, a, out.subspan(m.offset(i), m.actions(i)));
    a.assign(i, own);
  }
}

}  // namespace

GradientVector diff_reward_gradient(const SetFunction& f,
                                    const MarginalVector& x, Rng& rng) {
  require_layout(f, x);
  require_in_polytope(x);
  const auto dist = product_distribution(x);
  GradientVector g(x.layout());
  diff_reward_sample(f, dist, x.layout(), rng, g.values());
  return g;
}

GradientEstimate diff_reward_gradient_mean(const SetFunction& f,
                                           const MarginalVector& x,
                                           std::uint64_t n, Rng& rng,
                                           const GradientVector* reference) {
  require_layout(f, x);
  require_in_polytope(x);
  if (n == 0) throw ValidationError("need at least one gradient sample");
  const auto dist = product_distribution(x);
  const auto& m = x.layout();
  const std::size_t dim = m.ground_size();
  const Rng base = rng.split();
  const auto moments = kernels::sample_moments(
      n, dim + 1, base, [&](Rng& stream, std::span<double> out) {
        auto g = out.first(dim);
        diff_reward_sample(f, dist, m, stream, g);
        if (reference != nullptr) {
          double sq = 0.0;
          for (std::size_t c = 0; c < dim; ++c) {
            const double d = g[c] - (*reference)[c];
            sq += d * d;
          }
          out[dim] = sq;
        }
      });
  GradientEstimate est{GradientVector(m), GradientVector(m), moments.mean[dim]};
  for (std::size_t c = 0; c < dim; ++c) {
    est.mean[c] = moments.mean[c];
    est.stderr_[c] = moments.stderr_[c];
  }
  return est;
}

double pme_second_diff(const SetFunction& f, const MarginalVector& x,
                       AgentActionPair e, AgentActionPair other,
                       std::uint64_t cap) {
  require_layout(f, x);
  require_in_polytope(x);
  if (!x.layout().contains(e) || !x.layout().contains(other)) {
    throw ValidationError("pair index out of range");
  }
  if (e.agent == other.agent) return 0.0;
  const Pin pins[2] = {{static_cast<std::size_t>(e.agent), std::nullopt},
                       {static_cast<std::size_t>(other.agent), std::nullopt}};
  const auto dist = product_distribution(x, pins);
  return kernels::expectation(
      dist, 1,
      [&](const FeasibleSet& ctx, std::span<double> out) {
        FeasibleSet a = ctx;
        const double f0 = f.value(a);
        a.select(e.agent, e.action);
        const double fe = f.value(a);
        a.select(other.agent, other.action);
        const double feo = f.value(a);
        a.clear(e.agent);
        const double fo = f.value(a);
        out[0] = (feo - fo) - (fe - f0);
      },
      cap)[0];
}

double restricted_dr_slack(const SetFunction& f, const MarginalVector& x,
                           const MarginalVector& y, std::uint64_t cap) {
  if (!(x.layout() == y.layout())) throw ShapeError("x and y layouts differ");
  const GradientVector g = pme_grad_exact(f, x, cap);
  double inner = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) inner += g[k] * (y[k] - x[k]);
  return 0.5 * inner - 0.5 * pme_exact(f, y, cap) + pme_exact(f, x, cap);
}

namespace reference {

double pme_exact(const SetFunction& f, const MarginalVector& x,
                 std::uint64_t cap) {
  require_layout(f, x);
  require_in_polytope(x);
  const auto dist = product_distribution(x);
  return reference::expectation(
      dist, 1, [&f](const FeasibleSet& a, std::span<double> out) {
        out[0] = f.value(a);
      }, cap)[0];
}

GradientVector pme_grad_exact(const SetFunction& f, const MarginalVector& x,
                              std::uint64_t cap) {
  return grad_exact_impl(f, x, cap, [](auto&&... args) {
    return reference::expectation(args...);
  });
}

}  // namespace reference

}  // namespace submapg
