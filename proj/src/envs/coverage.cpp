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

#include "submapg/envs/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "submapg/errors.hpp"

namespace submapg {

DensityKind parse_density_kind(const std::string& name) {
  if (name == "uniform") return DensityKind::kUniform;
  if (name == "bimodal") return DensityKind::kBimodal;
  if (name == "rbf" || name == "rbf-sampled" || name == "gp") {
    return DensityKind::kRbfSampled;
  }
  throw ConfigError("unknown density kind '" + name + "'");
}

const char* to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::kUniform: return "uniform";
    case DensityKind::kBimodal: return "bimodal";
    case DensityKind::kRbfSampled: return "rbf-sampled";
  }
  return "unknown";
}

double DensityField::total() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

DensityField density_field(DensityKind kind, int width, int height,
                           std::uint64_t seed) {
  if (width <= 0 || height <= 0) throw ValidationError("grid must be non-empty");
  DensityField field{kind, width, height, seed,
                     std::vector<double>(static_cast<std::size_t>(width) * height, 1.0)};
  Rng rng(seed);
  const double side = std::min(width, height);
  switch (kind) {
    case DensityKind::kUniform:
      break;
    case DensityKind::kBimodal: {
      const double sigma = side / 6.0;
      double cx[2], cy[2];
      for (int k = 0; k < 2; ++k) {
        cx[k] = rng.uniform(0.0, width);
        cy[k] = rng.uniform(0.0, height);
      }
      for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
          double v = 0.01;
          for (int k = 0; k < 2; ++k) {
            const double dx = x - cx[k];
            const double dy = y - cy[k];
            v += std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
          }
          field.values[y * width + x] = v;
        }
      }
      break;
    }
    case DensityKind::kRbfSampled: {
      constexpr int kFeatures = 64;
      const double length = side / 5.0;
      std::vector<double> wx(kFeatures), wy(kFeatures), phase(kFeatures),
          amp(kFeatures);
      for (int k = 0; k < kFeatures; ++k) {
        wx[k] = rng.normal() / length;
        wy[k] = rng.normal() / length;
        phase[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
        amp[k] = rng.normal();
      }
      const double norm = std::sqrt(2.0 / kFeatures);
      for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
          double v = 0.0;
          for (int k = 0; k < kFeatures; ++k) {
            v += amp[k] * std::cos(wx[k] * x + wy[k] * y + phase[k]);
          }
          field.values[y * width + x] = norm * v;
        }
      }
      const auto [lo, hi] =
          std::minmax_element(field.values.begin(), field.values.end());
      const double low = *lo;
      const double span = *hi - *lo;
      for (double& v : field.values) {
        v = span > 0.0 ? 0.01 + 0.99 * (v - low) / span : 1.0;
      }
      break;
    }
  }
  return field;
}

Cell apply_move(Cell c, Move m, int width, int height) {
  switch (m) {
    case Move::kStay: break;
    case Move::kRight: c.x = std::min(c.x + 1, width - 1); break;
    case Move::kUp: c.y = std::min(c.y + 1, height - 1); break;
    case Move::kLeft: c.x = std::max(c.x - 1, 0); break;
    case Move::kDown: c.y = std::max(c.y - 1, 0); break;
  }
  return c;
}

std::vector<int> CoverageState::active_ids() const {
  std::vector<int> ids;
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (active[i]) ids.push_back(static_cast<int>(i));
  }
  return ids;
}

namespace {

std::vector<int> disc_cells(Cell c, int r, int width, int height) {
  std::vector<int> cells;
  for (int y = std::max(0, c.y - r); y <= std::min(height - 1, c.y + r); ++y) {
    for (int x = std::max(0, c.x - r); x <= std::min(width - 1, c.x + r); ++x) {
      cells.push_back(y * width + x);
    }
  }
  return cells;
}

}  // namespace

WeightedCoverage coverage_oracle(const CoverageState& s,
                                 const std::vector<std::vector<Move>>& moves) {
  const auto ids = s.active_ids();
  if (!moves.empty() && moves.size() != ids.size()) {
    throw ShapeError("one move subset per active agent is required");
  }
  std::vector<int> blocks;
  std::vector<std::vector<int>> covers;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    std::vector<Move> options;
    if (moves.empty()) {
      for (int m = 0; m < kNumMoves; ++m) options.push_back(static_cast<Move>(m));
    } else {
      options = moves[k];
    }
    blocks.push_back(static_cast<int>(options.size()));
    for (Move m : options) {
      const Cell next = apply_move(s.positions[ids[k]], m, s.width(), s.height());
      covers.push_back(disc_cells(next, s.r_cov, s.width(), s.height()));
    }
  }
  return WeightedCoverage(PartitionMatroid(std::move(blocks)), s.field.values,
                          std::move(covers));
}

double coverage_utility(const FeasibleSet& a, const CoverageState& s) {
  return coverage_oracle(s).value(a);
}

CoverageState coverage_step(const CoverageState& s, const FeasibleSet& a) {
  const auto ids = s.active_ids();
  if (a.num_agents() != ids.size() || !a.is_full()) {
    throw ValidationError("coverage step needs one move per active agent");
  }
  CoverageState next = s;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const int move = *a.selection(k);
    if (move < 0 || move >= kNumMoves) throw ValidationError("unknown move");
    next.positions[ids[k]] = apply_move(s.positions[ids[k]],
                                        static_cast<Move>(move), s.width(),
                                        s.height());
  }
  return next;
}

std::uint64_t observe_coverage(const CoverageState& s, int agent) {
  const Cell c = s.positions.at(agent);
  return static_cast<std::uint64_t>(c.y) * s.width() + c.x;
}

CoverageEnv::CoverageEnv(CoverageConfig config) : config_(std::move(config)) {
  if (config_.agents <= 0 || config_.horizon <= 0 || config_.cluster <= 0) {
    throw ConfigError("coverage needs positive agents, horizon and cluster");
  }
  if (config_.open && config_.base_agents > config_.agents) {
    throw ConfigError("base agents exceed the agent count");
  }
  state_.field = density_field(config_.density, config_.width, config_.height,
                               config_.field_seed);
  state_.r_cov = config_.r_cov;
  state_.r_com = config_.r_com;
  state_.positions.assign(config_.agents, Cell{});
  state_.active.assign(config_.agents, false);
}

Cell CoverageEnv::random_cluster_cell(Rng& rng) {
  const int side_x = std::min(config_.cluster, config_.width);
  const int side_y = std::min(config_.cluster, config_.height);
  return {cluster_origin_.x + static_cast<int>(rng.index(side_x)),
          cluster_origin_.y + static_cast<int>(rng.index(side_y))};
}

void CoverageEnv::reset(Rng& rng) {
  round_ = 0;
  const int side_x = std::min(config_.cluster, config_.width);
  const int side_y = std::min(config_.cluster, config_.height);
  cluster_origin_ = {static_cast<int>(rng.index(config_.width - side_x + 1)),
                     static_cast<int>(rng.index(config_.height - side_y + 1))};
  if (config_.open) {
    schedule_ = open_schedule(config_.horizon, config_.base_agents,
                              config_.agents - config_.base_agents,
                              config_.min_lifespan, config_.window_fraction, rng,
                              config_.agents);
  } else {
    schedule_ = closed_schedule(config_.horizon, config_.agents);
  }
  // Distinct start cells while the cluster has room.
  std::vector<Cell> taken;
  for (int i = 0; i < config_.agents; ++i) {
    Cell c = random_cluster_cell(rng);
    for (int attempt = 0; attempt < 64 &&
                          std::find(taken.begin(), taken.end(), c) != taken.end();
         ++attempt) {
      c = random_cluster_cell(rng);
    }
    taken.push_back(c);
    state_.positions[i] = c;
    state_.active[i] = false;
  }
  refresh_active(rng);
}

void CoverageEnv::refresh_active(Rng& rng) {
  const int step = static_cast<int>(round_) + 1;
  for (int i = 0; i < config_.agents; ++i) {
    const bool now = step <= config_.horizon && schedule_.active(i, step);
    if (now && !state_.active[i] && round_ > 0) {
      state_.positions[i] = random_cluster_cell(rng);
    }
    state_.active[i] = now;
  }
}

std::vector<AgentObservation> CoverageEnv::observe() const {
  std::vector<AgentObservation> obs;
  for (int id : state_.active_ids()) {
    obs.push_back({id, observe_coverage(state_, id),
                   std::vector<bool>(kNumMoves, true)});
  }
  return obs;
}

std::unique_ptr<SetFunction> CoverageEnv::utility() const {
  return std::make_unique<WeightedCoverage>(coverage_oracle(state_));
}

std::vector<std::vector<bool>> CoverageEnv::comm_graph() const {
  const auto ids = state_.active_ids();
  std::vector<std::vector<bool>> adj(ids.size(), std::vector<bool>(ids.size()));
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = 0; b < ids.size(); ++b) {
      const Cell p = state_.positions[ids[a]];
      const Cell q = state_.positions[ids[b]];
      const double d = std::hypot(p.x - q.x, p.y - q.y);
      adj[a][b] = a != b && d <= state_.r_com;
    }
  }
  return adj;
}

void CoverageEnv::step(const FeasibleSet& joint, Rng& rng) {
  state_ = coverage_step(state_, joint);
  ++round_;
  refresh_active(rng);
}

std::string CoverageEnv::digest() const {
  std::ostringstream os;
  os << "coverage;" << round_ << ';' << to_string(state_.field.kind) << ';'
     << state_.field.seed << ';';
  for (std::size_t i = 0; i < state_.positions.size(); ++i) {
    os << state_.positions[i].x << ',' << state_.positions[i].y << ','
       << state_.active[i] << ';';
  }
  return fnv1a_hex(os.str());
}

}  // namespace submapg
