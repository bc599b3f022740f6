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

#include "submapg/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "submapg/errors.hpp"

namespace submapg {

std::vector<double> project_block(std::span<const double> v, bool equality) {
  std::vector<double> out(v.begin(), v.end());
  if (out.empty()) return out;
  for (double x : out) {
    if (!std::isfinite(x)) throw DomainError("projection input is not finite");
  }
  if (equality) {
    double sum = 0.0;
    bool inside = true;
    for (double x : out) {
      sum += x;
      inside = inside && x >= 0.0 && x <= 1.0;
    }
    // Points already on the simplex are returned as given.
    if (inside && std::abs(sum - 1.0) <= kPolytopeTolerance) return out;
  } else {
    double clipped_sum = 0.0;
    for (double x : out) clipped_sum += std::max(0.0, x);
    if (clipped_sum <= 1.0) {
      for (double& x : out) x = std::max(0.0, x);
      return out;
    }
  }
  // Largest rho with u_rho - (sum_{j<=rho} u_j - 1) / rho > 0.
  std::vector<double> u(out);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) tau = candidate;
  }
  for (double& x : out) x = std::clamp(x - tau, 0.0, 1.0);
  return out;
}

FaceSpec FaceSpec::Categorical(std::vector<int> blocks) {
  std::vector<bool> eq(blocks.size(), true);
  return {std::move(blocks), std::move(eq)};
}

FaceSpec FaceSpec::Polytope(std::vector<int> blocks) {
  std::vector<bool> eq(blocks.size(), false);
  return {std::move(blocks), std::move(eq)};
}

MarginalVector project_face(const MarginalVector& x, const FaceSpec& face) {
  if (x.layout().blocks() != face.blocks ||
      face.equality.size() != face.blocks.size()) {
    throw ShapeError("marginal layout does not match the face");
  }
  MarginalVector out(x.layout());
  for (std::size_t i = 0; i < x.num_agents(); ++i) {
    const auto p = project_block(x.block(i), face.equality[i]);
    std::copy(p.begin(), p.end(), out.block(i).begin());
  }
  return out;
}

SlotMap::SlotMap(std::size_t n_max, std::size_t na_max)
    : slots_(n_max), na_max_(na_max) {}

std::size_t SlotMap::assign(int agent_id) {
  if (auto s = slot_of(agent_id)) return *s;
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    if (!slots_[s]) {
      slots_[s] = agent_id;
      return s;
    }
  }
  throw MappingError("no free slot for agent " + std::to_string(agent_id));
}

void SlotMap::release(int agent_id) {
  for (auto& s : slots_) {
    if (s == agent_id) s.reset();
  }
}

std::optional<std::size_t> SlotMap::slot_of(int agent_id) const {
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    if (slots_[s] == agent_id) return s;
  }
  return std::nullopt;
}

void SlotMap::place(int agent_id, std::size_t slot) {
  if (slot >= slots_.size()) throw MappingError("slot out of range");
  if (slots_[slot] && *slots_[slot] != agent_id) {
    throw MappingError("slot already occupied");
  }
  release(agent_id);
  slots_[slot] = agent_id;
}

std::vector<double> embed(const MarginalVector& x,
                          std::span<const int> agent_ids,
                          const SlotMap& slots) {
  if (agent_ids.size() != x.num_agents()) {
    throw ShapeError("one agent id per block is required");
  }
  std::vector<double> out(slots.padded_dimension(), 0.0);
  for (std::size_t k = 0; k < agent_ids.size(); ++k) {
    const auto slot = slots.slot_of(agent_ids[k]);
    if (!slot) {
      throw MappingError("agent " + std::to_string(agent_ids[k]) +
                         " has no slot");
    }
    const auto b = x.block(k);
    if (b.size() > slots.na_max()) {
      throw ShapeError("block wider than the padded action dimension");
    }
    std::copy(b.begin(), b.end(), out.begin() + *slot * slots.na_max());
  }
  return out;
}

double path_length(std::span<const std::vector<double>> sequence) {
  double total = 0.0;
  for (std::size_t t = 0; t + 1 < sequence.size(); ++t) {
    const auto& a = sequence[t];
    const auto& b = sequence[t + 1];
    if (a.size() != b.size()) throw ShapeError("path dimensions differ");
    double sq = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) sq += (a[k] - b[k]) * (a[k] - b[k]);
    total += std::sqrt(sq);
  }
  return total;
}

ExplicitBounds diameter_and_bounds(std::span<const FaceSpec> faces,
                                   double marginal_bound, std::size_t n_max,
                                   std::size_t na_max) {
  if (n_max == 0 || na_max == 0 || marginal_bound < 0.0) {
    throw ValidationError("bounds need positive dimensions and B >= 0");
  }
  for (const auto& face : faces) {
    if (face.blocks.size() > n_max) {
      throw ValidationError("face has more agents than N_max");
    }
    for (int k : face.blocks) {
      if (static_cast<std::size_t>(k) > na_max) {
        throw ValidationError("face has more actions than Na_max");
      }
    }
  }
  const double n = static_cast<double>(n_max);
  const double scale = marginal_bound * std::sqrt(n * static_cast<double>(na_max));
  return {std::sqrt(2.0 * n), scale, scale};
}

}  // namespace submapg
