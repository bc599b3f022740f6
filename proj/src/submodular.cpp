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

#include "submapg/submodular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "submapg/errors.hpp"

namespace submapg {

PartitionMatroid::PartitionMatroid(std::vector<int> blocks)
    : blocks_(std::move(blocks)) {
  offsets_.reserve(blocks_.size() + 1);
  for (int k : blocks_) {
    if (k < 1) throw ValidationError("partition block must hold >= 1 action");
    offsets_.push_back(offsets_.back() + static_cast<std::size_t>(k));
  }
}

int PartitionMatroid::max_actions() const {
  return blocks_.empty() ? 0 : *std::max_element(blocks_.begin(), blocks_.end());
}

std::uint64_t PartitionMatroid::independent_set_count() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  for (int k : blocks_) {
    const auto radix = static_cast<std::uint64_t>(k) + 1;
    if (count > kMax / radix) return kMax;
    count *= radix;
  }
  return count;
}

FeasibleSet FeasibleSet::FromPairs(std::span<const AgentActionPair> pairs,
                                   const PartitionMatroid& m) {
  FeasibleSet set(m.num_agents());
  for (const auto& e : pairs) {
    if (!m.contains(e)) {
      throw ValidationError("pair (" + std::to_string(e.agent) + "," +
                            std::to_string(e.action) + ") out of range");
    }
    if (set.selection_[e.agent].has_value()) {
      throw ConstraintViolation("agent " + std::to_string(e.agent) +
                                " selected twice");
    }
    set.selection_[e.agent] = e.action;
  }
  return set;
}

FeasibleSet FeasibleSet::Full(std::span<const int> actions) {
  FeasibleSet set(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) set.select(i, actions[i]);
  return set;
}

std::size_t FeasibleSet::size() const {
  return static_cast<std::size_t>(
      std::count_if(selection_.begin(), selection_.end(),
                    [](const auto& s) { return s.has_value(); }));
}

std::vector<AgentActionPair> FeasibleSet::pairs() const {
  std::vector<AgentActionPair> out;
  for (std::size_t i = 0; i < selection_.size(); ++i) {
    if (selection_[i]) out.push_back({static_cast<int>(i), *selection_[i]});
  }
  return out;
}

FeasibleSet FeasibleSet::with(AgentActionPair e) const {
  if (static_cast<std::size_t>(e.agent) >= selection_.size()) {
    throw ValidationError("agent index out of range");
  }
  if (selection_[e.agent]) {
    throw ConstraintViolation("agent " + std::to_string(e.agent) +
                              " already selects an action");
  }
  FeasibleSet out = *this;
  out.selection_[e.agent] = e.action;
  return out;
}

FeasibleSet FeasibleSet::without(std::size_t agent) const {
  FeasibleSet out = *this;
  out.selection_[agent].reset();
  return out;
}

std::vector<int> FeasibleSet::order_key(const PartitionMatroid& m) const {
  std::vector<int> key(selection_.size());
  for (std::size_t i = 0; i < selection_.size(); ++i) {
    key[i] = selection_[i] ? *selection_[i] : m.actions(i);
  }
  return key;
}

std::string FeasibleSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& e : pairs()) {
    if (!first) os << ',';
    os << '(' << e.agent << ',' << e.action << ')';
    first = false;
  }
  os << '}';
  return os.str();
}

void require_member(const FeasibleSet& a, const PartitionMatroid& m) {
  if (a.num_agents() != m.num_agents()) {
    throw ValidationError("set has " + std::to_string(a.num_agents()) +
                          " agents, matroid has " + std::to_string(m.num_agents()));
  }
  for (std::size_t i = 0; i < a.num_agents(); ++i) {
    const auto& s = a.selection(i);
    if (s && (*s < 0 || *s >= m.actions(i))) {
      throw ValidationError("action " + std::to_string(*s) + " out of range for agent " +
                            std::to_string(i));
    }
  }
}

double marginal_gain(const SetFunction& f, AgentActionPair e,
                     const FeasibleSet& a) {
  if (!f.matroid().contains(e)) throw ValidationError("element out of range");
  if (a.selection(e.agent)) {
    throw ConstraintViolation("A + e selects two actions for agent " +
                              std::to_string(e.agent));
  }
  return f.value(a.with(e)) - f.value(a);
}

bool is_feasible(std::span<const AgentActionPair> pairs,
                 const PartitionMatroid& m) {
  std::vector<char> used(m.num_agents(), 0);
  bool ok = true;
  for (const auto& e : pairs) {
    if (!m.contains(e)) throw ValidationError("pair index out of range");
    if (used[e.agent]) ok = false;
    used[e.agent] = 1;
  }
  return ok;
}

namespace {

// Odometer over every independent set; digit k_i means idle. The last agent
// varies fastest, so sets are visited in increasing order_key.
class IndependentSetOdometer {
 public:
  explicit IndependentSetOdometer(const PartitionMatroid& m)
      : m_(m), digits_(m.num_agents(), 0), set_(m.num_agents()) {
    for (std::size_t i = 0; i < digits_.size(); ++i) set_.select(i, 0);
  }

  const FeasibleSet& current() const { return set_; }

  bool next() {
    for (std::size_t pos = digits_.size(); pos-- > 0;) {
      const int k = m_.actions(pos);
      if (digits_[pos] < k) {
        ++digits_[pos];
        if (digits_[pos] == k) {
          set_.clear(pos);
        } else {
          set_.select(pos, digits_[pos]);
        }
        return true;
      }
      digits_[pos] = 0;
      set_.select(pos, 0);
    }
    return false;
  }

 private:
  const PartitionMatroid& m_;
  std::vector<int> digits_;
  FeasibleSet set_;
};

void require_enumerable(const PartitionMatroid& m, std::uint64_t cap) {
  if (m.independent_set_count() > cap) {
    throw SizeError("enumeration of " + std::to_string(m.independent_set_count()) +
                    " independent sets exceeds cap " + std::to_string(cap));
  }
}

}  // namespace

OptResult brute_force_opt(const SetFunction& f, std::uint64_t cap) {
  const auto& m = f.matroid();
  require_enumerable(m, cap);
  IndependentSetOdometer it(m);
  OptResult best{it.current(), f.value(it.current())};
  while (it.next()) {
    const double v = f.value(it.current());
    if (v > best.value) best = {it.current(), v};
  }
  return best;
}

const char* to_string(PropertyKind kind) {
  switch (kind) {
    case PropertyKind::kNormalization: return "normalization";
    case PropertyKind::kMonotonicity: return "monotonicity";
    case PropertyKind::kSubmodularity: return "submodularity";
    case PropertyKind::kMarginalBound: return "marginal_bound";
  }
  return "unknown";
}

namespace {

struct AssumptionChecker {
  const SetFunction& f;
  double tol;
  double bound;
  PropertyReport report;

  // Marginal of e at B: sign and bound.
  double check_marginal(const FeasibleSet& b, AgentActionPair e, double fb) {
    const double gain = f.value(b.with(e)) - fb;
    report.checks += 2;
    if (gain < -tol) {
      report.violations.push_back(
          {PropertyKind::kMonotonicity, b, b, e, -gain});
    }
    if (gain > bound + tol) {
      report.violations.push_back(
          {PropertyKind::kMarginalBound, b, b, e, gain - bound});
    }
    return gain;
  }

  void check_diminishing(const FeasibleSet& a, const FeasibleSet& b,
                         AgentActionPair e, double gain_b) {
    const double gain_a = f.value(a.with(e)) - f.value(a);
    ++report.checks;
    if (gain_a < gain_b - tol) {
      report.violations.push_back(
          {PropertyKind::kSubmodularity, a, b, e, gain_b - gain_a});
    }
  }
};

}  // namespace

PropertyReport check_assumption(const SetFunction& f, CheckMode mode,
                                std::size_t trials, Rng* rng, double tolerance,
                                std::uint64_t cap) {
  const auto& m = f.matroid();
  AssumptionChecker checker{f, tolerance, f.marginal_bound(), {}};

  const FeasibleSet empty(m.num_agents());
  const double f_empty = f.value(empty);
  ++checker.report.checks;
  if (std::abs(f_empty) > tolerance) {
    checker.report.violations.push_back(
        {PropertyKind::kNormalization, empty, empty, std::nullopt,
         std::abs(f_empty)});
  }

  if (mode == CheckMode::kExhaustive) {
    require_enumerable(m, cap);
    IndependentSetOdometer it(m);
    do {
      const FeasibleSet& b = it.current();
      const double fb = f.value(b);
      const auto selected = b.pairs();
      for (std::size_t agent = 0; agent < m.num_agents(); ++agent) {
        if (b.selection(agent)) continue;
        for (int action = 0; action < m.actions(agent); ++action) {
          const AgentActionPair e{static_cast<int>(agent), action};
          const double gain_b = checker.check_marginal(b, e, fb);
          // Every proper subset A of B.
          const std::size_t subsets = std::size_t{1} << selected.size();
          for (std::size_t mask = 0; mask + 1 < subsets; ++mask) {
            FeasibleSet a(m.num_agents());
            for (std::size_t k = 0; k < selected.size(); ++k) {
              if (mask & (std::size_t{1} << k)) {
                a.select(selected[k].agent, selected[k].action);
              }
            }
            checker.check_diminishing(a, b, e, gain_b);
          }
        }
      }
    } while (it.next());
    return std::move(checker.report);
  }

  if (rng == nullptr) throw ValidationError("sampled mode needs an Rng");
  if (m.num_agents() == 0) return std::move(checker.report);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    FeasibleSet b(m.num_agents());
    for (std::size_t i = 0; i < m.num_agents(); ++i) {
      if (rng->bernoulli(0.5)) {
        b.select(i, static_cast<int>(rng->index(m.actions(i))));
      }
    }
    std::vector<std::size_t> idle;
    for (std::size_t i = 0; i < m.num_agents(); ++i) {
      if (!b.selection(i)) idle.push_back(i);
    }
    std::size_t agent;
    if (idle.empty()) {
      agent = rng->index(m.num_agents());
      b.clear(agent);
    } else {
      agent = idle[rng->index(idle.size())];
    }
    FeasibleSet a = b;
    for (std::size_t i = 0; i < m.num_agents(); ++i) {
      if (a.selection(i) && rng->bernoulli(0.5)) a.clear(i);
    }
    const AgentActionPair e{static_cast<int>(agent),
                            static_cast<int>(rng->index(m.actions(agent)))};
    const double gain_b = checker.check_marginal(b, e, f.value(b));
    checker.check_diminishing(a, b, e, gain_b);
  }
  return std::move(checker.report);
}

}  // namespace submapg
