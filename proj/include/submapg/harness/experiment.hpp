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

// Experiment configuration and the `run` / `opt` pipelines.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "submapg/dynamics.hpp"
#include "submapg/envs/coverage.hpp"
#include "submapg/envs/tracking.hpp"
#include "submapg/harness/config.hpp"
#include "submapg/policy.hpp"

namespace submapg {

// Default output directory when neither --out nor [experiment] out is given.
inline constexpr const char* kOutputDirEnv = "SUBMAPG_OUT";
std::string default_output_dir();

enum class EnvKind { kCoverage, kTracking, kBandit, kDrift };
EnvKind parse_env_kind(const std::string& name);
const char* to_string(EnvKind kind);

// Pipelines: "submapg" and "shared_reward_train" train a tabular policy;
// csg_global, csg_local, online_local_greedy and random play every round
// directly; "online_sga" runs the projected dynamics on the drift stream.
bool is_known_method(const std::string& method);

struct ExperimentConfig {
  std::string name = "experiment";
  EnvKind env = EnvKind::kCoverage;
  std::string method = "submapg";
  std::size_t episodes = 10;
  std::optional<double> eta;  // empty means the step-size formula
  BaselineMode baseline = BaselineMode::kNone;
  std::vector<std::uint64_t> seeds{0};
  bool brute_force_opt = false;
  bool save_policy = false;
  std::string out;

  CoverageConfig coverage;
  TrackingConfig tracking;
  std::string bandit = "overlap";  // overlap | overlap_toy
  std::size_t bandit_horizon = 1;
  DriftingCoverageStream::Options drift;
  bool drift_exact_gradient = false;
};

// Reads [experiment] plus the section named after the environment. Throws
// ConfigError with file, line and key on invalid or unknown entries.
ExperimentConfig parse_experiment(const ConfigFile& file);
ExperimentConfig load_experiment(const std::string& path);
// Every field in config syntax; parse_experiment(to_text(c)) == c.
std::string to_text(const ExperimentConfig& config);
bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

struct RunOutput {
  std::string run_id;
  std::uint64_t seed = 0;
  std::string csv;           // episode log, header included
  std::string summary_row;   // one summary.csv line without newline
  std::string policy;        // checkpoint text when saved
  double final_return = 0.0;
  double mean_return = 0.0;
};

// One seed of the configured pipeline, fully in memory.
RunOutput run_single(const ExperimentConfig& config, std::uint64_t seed);

struct RunReport {
  std::vector<std::string> files;
  std::string summary_text;
};

// Runs every seed (up to `jobs` at once), then writes <out>/<run_id>.csv,
// summary.csv and summary.txt. Nothing is left behind on failure.
RunReport run(const ExperimentConfig& config, const std::string& out_dir,
              int jobs = 1);

// Plays csg_global through one episode and dumps each round's brute-force
// OPT and maximizer as CSV.
std::string opt_dump(const ExperimentConfig& config, std::uint64_t seed,
                     std::uint64_t cap = kDefaultEnumerationCap);

// Column lists of the two CSV files.
const std::vector<std::string>& episode_columns();
const std::vector<std::string>& summary_columns();

// printf("%.12g")
std::string format_number(double v);

}  // namespace submapg
