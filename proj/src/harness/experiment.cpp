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

#include "submapg/harness/experiment.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numeric>
#include <sstream>

#include "submapg/baselines.hpp"
#include "submapg/envs/bandit.hpp"
#include "submapg/errors.hpp"
#include "submapg/polytope.hpp"

namespace submapg {

namespace fs = std::filesystem;

std::string default_output_dir() {
  const char* env = std::getenv(kOutputDirEnv);
  return env && *env ? env : "out";
}

EnvKind parse_env_kind(const std::string& name) {
  if (name == "coverage") return EnvKind::kCoverage;
  if (name == "tracking") return EnvKind::kTracking;
  if (name == "bandit") return EnvKind::kBandit;
  if (name == "drift") return EnvKind::kDrift;
  throw ConfigError("unknown environment '" + name + "'");
}

const char* to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::kCoverage: return "coverage";
    case EnvKind::kTracking: return "tracking";
    case EnvKind::kBandit: return "bandit";
    case EnvKind::kDrift: return "drift";
  }
  return "unknown";
}

namespace {

const std::vector<std::string> kTrainMethods{"submapg", "shared_reward_train"};
const std::vector<std::string> kPlayMethods{"csg_global", "csg_local",
                                            "online_local_greedy", "random"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

const char* to_string(BaselineMode mode) {
  return mode == BaselineMode::kNone ? "none" : "moving_average";
}

}  // namespace

bool is_known_method(const std::string& method) {
  return contains(kTrainMethods, method) || contains(kPlayMethods, method) ||
         method == "online_sga";
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string format_exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int positive_int(const ConfigFile& f, const std::string& s, const std::string& k,
                 int fallback) {
  const auto v = f.get_int(s, k, fallback);
  if (v <= 0 || v > 1'000'000) f.fail(s, k, "must be a positive integer");
  return static_cast<int>(v);
}

int nonnegative_int(const ConfigFile& f, const std::string& s,
                    const std::string& k, int fallback) {
  const auto v = f.get_int(s, k, fallback);
  if (v < 0 || v > 1'000'000) f.fail(s, k, "must be a nonnegative integer");
  return static_cast<int>(v);
}

double positive_double(const ConfigFile& f, const std::string& s,
                       const std::string& k, double fallback) {
  const double v = f.get_double(s, k, fallback);
  if (!(v > 0.0) || !std::isfinite(v)) f.fail(s, k, "must be positive");
  return v;
}

double fraction(const ConfigFile& f, const std::string& s, const std::string& k,
                double fallback) {
  const double v = f.get_double(s, k, fallback);
  if (!(v > 0.0 && v <= 1.0)) f.fail(s, k, "must lie in (0, 1]");
  return v;
}

std::vector<int> parse_blocks(const ConfigFile& f, const std::string& s,
                              const std::string& k, const std::vector<int>& fallback) {
  std::vector<std::uint64_t> raw(fallback.begin(), fallback.end());
  raw = f.get_u64_list(s, k, raw);
  std::vector<int> blocks;
  for (auto v : raw) {
    if (v == 0 || v > 64) f.fail(s, k, "block sizes must lie in [1, 64]");
    blocks.push_back(static_cast<int>(v));
  }
  return blocks;
}

}  // namespace

ExperimentConfig parse_experiment(const ConfigFile& f) {
  ExperimentConfig c;
  const std::string e = "experiment";
  if (!f.has_section(e)) throw ConfigError("missing [experiment] section");
  c.name = f.get_string(e, "name", c.name);
  if (c.name.empty() || c.name.find_first_of("/\\ \t") != std::string::npos) {
    f.fail(e, "name", "must be non-empty without spaces or slashes");
  }
  try {
    c.env = parse_env_kind(f.get_string(e, "env", to_string(c.env)));
  } catch (const ConfigError& err) {
    f.fail(e, "env", err.what());
  }
  c.method = f.get_string(e, "method", c.method);
  if (!is_known_method(c.method)) f.fail(e, "method", "unknown method");
  if ((c.method == "online_sga") != (c.env == EnvKind::kDrift)) {
    f.fail(e, "method", "online_sga runs exactly on env = drift");
  }
  c.episodes = static_cast<std::size_t>(positive_int(f, e, "episodes", 10));
  const std::string eta = f.get_string(e, "eta", "auto");
  if (eta != "auto") {
    const double v = f.get_double(e, "eta", 0.0);
    if (!(v >= 0.0) || !std::isfinite(v)) f.fail(e, "eta", "must be >= 0 or auto");
    c.eta = v;
  }
  const std::string baseline = f.get_string(e, "baseline", "none");
  if (baseline == "none") {
    c.baseline = BaselineMode::kNone;
  } else if (baseline == "moving_average") {
    c.baseline = BaselineMode::kMovingAverage;
  } else {
    f.fail(e, "baseline", "expected none or moving_average");
  }
  c.seeds = f.get_u64_list(e, "seeds", c.seeds);
  c.brute_force_opt = f.get_bool(e, "brute_force_opt", c.brute_force_opt);
  c.save_policy = f.get_bool(e, "save_policy", c.save_policy);
  c.out = f.get_string(e, "out", c.out);

  switch (c.env) {
    case EnvKind::kCoverage: {
      const std::string s = "coverage";
      auto& k = c.coverage;
      k.width = positive_int(f, s, "width", k.width);
      k.height = positive_int(f, s, "height", k.height);
      k.agents = positive_int(f, s, "agents", k.agents);
      k.r_cov = nonnegative_int(f, s, "r_cov", k.r_cov);
      k.r_com = nonnegative_int(f, s, "r_com", k.r_com);
      k.horizon = positive_int(f, s, "horizon", k.horizon);
      k.cluster = positive_int(f, s, "cluster", k.cluster);
      try {
        k.density = parse_density_kind(f.get_string(s, "density", to_string(k.density)));
      } catch (const ConfigError& err) {
        f.fail(s, "density", err.what());
      }
      k.field_seed = f.get_u64(s, "field_seed", k.field_seed);
      k.open = f.get_bool(s, "open", k.open);
      k.base_agents = positive_int(f, s, "base_agents", k.base_agents);
      k.min_lifespan = positive_int(f, s, "min_lifespan", k.min_lifespan);
      k.window_fraction = fraction(f, s, "window_fraction", k.window_fraction);
      if (k.open && k.base_agents > k.agents) {
        f.fail(s, "base_agents", "exceeds agents");
      }
      break;
    }
    case EnvKind::kTracking: {
      const std::string s = "tracking";
      auto& k = c.tracking;
      auto& p = k.params;
      p.side = positive_double(f, s, "side", p.side);
      p.v_a = positive_double(f, s, "v_a", p.v_a);
      p.dt = positive_double(f, s, "dt", p.dt);
      p.r_sen = positive_double(f, s, "r_sen", p.r_sen);
      p.r_com = f.get_double(s, "r_com", p.r_com);
      if (!(p.r_com >= 0.0)) f.fail(s, "r_com", "must be nonnegative");
      p.v_m = f.get_double(s, "v_m", p.v_m);
      if (!(p.v_m >= 0.0)) f.fail(s, "v_m", "must be nonnegative");
      p.num_rates = positive_int(f, s, "num_rates", p.num_rates);
      p.max_rate = f.get_double(s, "max_rate", p.max_rate);
      if (!(p.max_rate >= 0.0)) f.fail(s, "max_rate", "must be nonnegative");
      p.resample_prob = f.get_double(s, "resample_prob", p.resample_prob);
      if (!(p.resample_prob >= 0.0 && p.resample_prob <= 1.0)) {
        f.fail(s, "resample_prob", "must lie in [0, 1]");
      }
      p.prediction_steps = positive_int(f, s, "prediction_steps", p.prediction_steps);
      k.agents = positive_int(f, s, "agents", k.agents);
      k.targets = nonnegative_int(f, s, "targets", k.targets);
      k.horizon = positive_int(f, s, "horizon", k.horizon);
      k.pattern = f.get_string(s, "pattern", k.pattern);
      if (k.pattern != "mixed" && k.pattern != "static" && k.pattern != "linear" &&
          k.pattern != "random") {
        f.fail(s, "pattern", "expected static, linear, random or mixed");
      }
      k.open = f.get_bool(s, "open", k.open);
      k.base_agents = positive_int(f, s, "base_agents", k.base_agents);
      k.base_targets = nonnegative_int(f, s, "base_targets", k.base_targets);
      k.min_lifespan = positive_int(f, s, "min_lifespan", k.min_lifespan);
      k.window_fraction = fraction(f, s, "window_fraction", k.window_fraction);
      if (k.open && k.base_agents > k.agents) f.fail(s, "base_agents", "exceeds agents");
      if (k.open && k.base_targets > k.targets) {
        f.fail(s, "base_targets", "exceeds targets");
      }
      break;
    }
    case EnvKind::kBandit: {
      const std::string s = "bandit";
      c.bandit = f.get_string(s, "kind", c.bandit);
      if (c.bandit != "overlap" && c.bandit != "overlap_toy") {
        f.fail(s, "kind", "expected overlap or overlap_toy");
      }
      c.bandit_horizon = static_cast<std::size_t>(positive_int(f, s, "horizon", 1));
      break;
    }
    case EnvKind::kDrift: {
      const std::string s = "drift";
      auto& d = c.drift;
      d.blocks = parse_blocks(f, s, "blocks", d.blocks);
      d.items = positive_int(f, s, "items", d.items);
      if (d.items > 4096) f.fail(s, "items", "at most 4096 items");
      d.horizon = static_cast<std::size_t>(
          positive_int(f, s, "horizon", static_cast<int>(d.horizon)));
      d.drift = f.get_double(s, "drift", d.drift);
      if (!(d.drift >= 0.0 && d.drift <= 1.0)) f.fail(s, "drift", "must lie in [0, 1]");
      d.jump = f.get_bool(s, "jump", d.jump);
      c.drift_exact_gradient = f.get_bool(s, "exact_gradient", c.drift_exact_gradient);
      break;
    }
  }
  f.require_all_used();
  return c;
}

ExperimentConfig load_experiment(const std::string& path) {
  return parse_experiment(ConfigFile::load(path));
}

std::string to_text(const ExperimentConfig& c) {
  std::ostringstream os;
  auto b = [](bool v) { return v ? "true" : "false"; };
  os << "[experiment]\n"
     << "name = " << c.name << '\n'
     << "env = " << to_string(c.env) << '\n'
     << "method = " << c.method << '\n'
     << "episodes = " << c.episodes << '\n'
     << "eta = " << (c.eta ? format_exact(*c.eta) : std::string("auto")) << '\n'
     << "baseline = " << to_string(c.baseline) << '\n'
     << "seeds = ";
  for (std::size_t i = 0; i < c.seeds.size(); ++i) {
    os << (i ? "," : "") << c.seeds[i];
  }
  os << '\n'
     << "brute_force_opt = " << b(c.brute_force_opt) << '\n'
     << "save_policy = " << b(c.save_policy) << '\n';
  if (!c.out.empty()) os << "out = " << c.out << '\n';
  switch (c.env) {
    case EnvKind::kCoverage: {
      const auto& k = c.coverage;
      os << "\n[coverage]\n"
         << "width = " << k.width << "\nheight = " << k.height
         << "\nagents = " << k.agents << "\nr_cov = " << k.r_cov
         << "\nr_com = " << k.r_com << "\nhorizon = " << k.horizon
         << "\ncluster = " << k.cluster << "\ndensity = " << to_string(k.density)
         << "\nfield_seed = " << k.field_seed << "\nopen = " << b(k.open)
         << "\nbase_agents = " << k.base_agents
         << "\nmin_lifespan = " << k.min_lifespan
         << "\nwindow_fraction = " << format_exact(k.window_fraction) << '\n';
      break;
    }
    case EnvKind::kTracking: {
      const auto& k = c.tracking;
      const auto& p = k.params;
      os << "\n[tracking]\n"
         << "side = " << format_exact(p.side) << "\nv_a = " << format_exact(p.v_a)
         << "\ndt = " << format_exact(p.dt) << "\nr_sen = " << format_exact(p.r_sen)
         << "\nr_com = " << format_exact(p.r_com)
         << "\nv_m = " << format_exact(p.v_m) << "\nnum_rates = " << p.num_rates
         << "\nmax_rate = " << format_exact(p.max_rate)
         << "\nresample_prob = " << format_exact(p.resample_prob)
         << "\nprediction_steps = " << p.prediction_steps
         << "\nagents = " << k.agents << "\ntargets = " << k.targets
         << "\nhorizon = " << k.horizon << "\npattern = " << k.pattern
         << "\nopen = " << b(k.open) << "\nbase_agents = " << k.base_agents
         << "\nbase_targets = " << k.base_targets
         << "\nmin_lifespan = " << k.min_lifespan
         << "\nwindow_fraction = " << format_exact(k.window_fraction) << '\n';
      break;
    }
    case EnvKind::kBandit:
      os << "\n[bandit]\nkind = " << c.bandit << "\nhorizon = " << c.bandit_horizon
         << '\n';
      break;
    case EnvKind::kDrift: {
      const auto& d = c.drift;
      os << "\n[drift]\nblocks = ";
      for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        os << (i ? "," : "") << d.blocks[i];
      }
      os << "\nitems = " << d.items << "\nhorizon = " << d.horizon
         << "\ndrift = " << format_exact(d.drift) << "\njump = " << b(d.jump)
         << "\nexact_gradient = " << b(c.drift_exact_gradient) << '\n';
      break;
    }
  }
  return os.str();
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  if (a.name != b.name || a.env != b.env || a.method != b.method ||
      a.episodes != b.episodes || a.eta != b.eta || a.baseline != b.baseline ||
      a.seeds != b.seeds || a.brute_force_opt != b.brute_force_opt ||
      a.save_policy != b.save_policy || a.out != b.out) {
    return false;
  }
  switch (a.env) {
    case EnvKind::kCoverage: {
      const auto &x = a.coverage, &y = b.coverage;
      return x.width == y.width && x.height == y.height && x.agents == y.agents &&
             x.r_cov == y.r_cov && x.r_com == y.r_com && x.horizon == y.horizon &&
             x.cluster == y.cluster && x.density == y.density &&
             x.field_seed == y.field_seed && x.open == y.open &&
             x.base_agents == y.base_agents && x.min_lifespan == y.min_lifespan &&
             x.window_fraction == y.window_fraction;
    }
    case EnvKind::kTracking: {
      const auto &x = a.tracking, &y = b.tracking;
      const auto &p = x.params, &q = y.params;
      return p.side == q.side && p.v_a == q.v_a && p.dt == q.dt &&
             p.r_sen == q.r_sen && p.r_com == q.r_com && p.v_m == q.v_m &&
             p.num_rates == q.num_rates && p.max_rate == q.max_rate &&
             p.resample_prob == q.resample_prob &&
             p.prediction_steps == q.prediction_steps && x.agents == y.agents &&
             x.targets == y.targets && x.horizon == y.horizon &&
             x.pattern == y.pattern && x.open == y.open &&
             x.base_agents == y.base_agents && x.base_targets == y.base_targets &&
             x.min_lifespan == y.min_lifespan &&
             x.window_fraction == y.window_fraction;
    }
    case EnvKind::kBandit:
      return a.bandit == b.bandit && a.bandit_horizon == b.bandit_horizon;
    case EnvKind::kDrift:
      return a.drift.blocks == b.drift.blocks && a.drift.items == b.drift.items &&
             a.drift.horizon == b.drift.horizon && a.drift.drift == b.drift.drift &&
             a.drift.jump == b.drift.jump &&
             a.drift_exact_gradient == b.drift_exact_gradient;
  }
  return true;
}

const std::vector<std::string>& episode_columns() {
  static const std::vector<std::string> columns{
      "run_id",      "seed",          "method",         "env",
      "episode",     "round",         "utility",        "opt",
      "inst_regret", "cum_utility",   "cum_regret",     "active_agents",
      "active_targets", "state_digest"};
  return columns;
}

const std::vector<std::string>& summary_columns() {
  static const std::vector<std::string> columns{
      "run_id",       "seed",        "method",           "env",
      "episodes",     "rounds",      "final_return",     "mean_return",
      "final_cum_regret", "policy_rows"};
  return columns;
}

namespace {

std::string join_header(const std::vector<std::string>& cols) {
  std::string s;
  for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
  return s + "\n";
}

EnvFactory make_factory(const ExperimentConfig& c) {
  switch (c.env) {
    case EnvKind::kCoverage: {
      auto cfg = c.coverage;
      return [cfg] { return std::make_unique<CoverageEnv>(cfg); };
    }
    case EnvKind::kTracking: {
      auto cfg = c.tracking;
      return [cfg] { return std::make_unique<TrackingEnv>(cfg); };
    }
    case EnvKind::kBandit: {
      std::shared_ptr<const SetFunction> f =
          c.bandit == "overlap_toy"
              ? std::make_shared<WeightedCoverage>(overlap_toy())
              : std::make_shared<WeightedCoverage>(overlap_bandit());
      const auto horizon = c.bandit_horizon;
      return [f, horizon] { return std::make_unique<BanditEnvironment>(f, horizon); };
    }
    case EnvKind::kDrift:
      break;
  }
  throw ConfigError("environment has no episodic form");
}

// Rows of one episode accumulate cumulative columns from zero.
class EpisodeLog {
 public:
  EpisodeLog(const ExperimentConfig& c, std::string run_id, std::uint64_t seed)
      : prefix_(run_id + "," + std::to_string(seed) + "," + c.method + "," +
                to_string(c.env) + ",") {
    out_ << join_header(episode_columns());
  }

  void begin_episode(std::size_t episode) {
    episode_ = episode;
    round_ = 0;
    cum_utility_ = 0.0;
    cum_regret_ = 0.0;
    return_ = 0.0;
    has_opt_ = true;
  }

  void row(double utility, std::optional<double> opt, std::size_t agents,
           std::size_t targets, const std::string& digest) {
    ++round_;
    cum_utility_ += utility;
    return_ += utility;
    out_ << prefix_ << episode_ << ',' << round_ << ',' << format_number(utility)
         << ',';
    if (opt) {
      const double inst = *opt - utility;
      cum_regret_ += inst;
      out_ << format_number(*opt) << ',' << format_number(inst) << ',';
    } else {
      has_opt_ = false;
      out_ << ",,";
    }
    out_ << format_number(cum_utility_) << ',';
    if (has_opt_) out_ << format_number(cum_regret_);
    out_ << ',' << agents << ',' << targets << ',' << digest << '\n';
  }

  double episode_return() const { return return_; }
  std::size_t rounds() const { return round_; }
  std::optional<double> cum_regret() const {
    return has_opt_ && round_ > 0 ? std::optional<double>(cum_regret_) : std::nullopt;
  }
  std::string text() const { return out_.str(); }

 private:
  std::string prefix_;
  std::ostringstream out_;
  std::size_t episode_ = 0;
  std::size_t round_ = 0;
  double cum_utility_ = 0.0;
  double cum_regret_ = 0.0;
  double return_ = 0.0;
  bool has_opt_ = true;
};

std::size_t max_agents_of(const ExperimentConfig& c, const Environment& env) {
  switch (c.env) {
    case EnvKind::kCoverage: return c.coverage.agents;
    case EnvKind::kTracking: return c.tracking.agents;
    default: return env.active_agents().size();
  }
}

// D / sqrt(K (G^2 + sigma^2)) with the explicit constants of the first
// round's utility at full population.
double auto_train_eta(const ExperimentConfig& c, const EnvFactory& make_env,
                      const Rng& rng) {
  auto env = make_env();
  Rng probe = rng.derive(0xe7a);
  env->reset(probe);
  const auto f = env->utility();
  const std::size_t n = std::max<std::size_t>(1, max_agents_of(c, *env));
  const int na = std::max(1, f->matroid().max_actions());
  double b = f->marginal_bound();
  if (!(b > 0.0)) b = 1.0;
  const auto k = diameter_and_bounds({}, b, n, static_cast<std::size_t>(na));
  return step_size_stagewise(k.diameter, k.gradient, k.sigma, c.episodes);
}

}  // namespace

RunOutput run_single(const ExperimentConfig& c, std::uint64_t seed) {
  RunOutput out;
  out.seed = seed;
  out.run_id = c.name + "-s" + std::to_string(seed);
  EpisodeLog log(c, out.run_id, seed);
  const Rng root(seed);
  std::vector<double> returns;
  std::size_t policy_rows = 0;

  if (c.env == EnvKind::kDrift) {
    const double eta = [&] {
      if (c.eta) return *c.eta;
      DriftingCoverageStream probe(c.drift, seed);
      double b = 0.0;
      for (std::size_t t = 0; t < probe.horizon(); ++t) {
        b = std::max(b, probe.round(t).utility->marginal_bound());
      }
      DriftingCoverageStream again(c.drift, seed);
      const double path = optimum_path_length(again);
      const auto k = diameter_and_bounds({}, b, again.max_agents(), again.max_actions());
      return step_size_dynamic(k.diameter, path, probe.horizon(), k.gradient, k.sigma);
    }();
    DriftingCoverageStream stream(c.drift, seed);
    Rng rng = root.derive(1);
    const auto trace =
        run_online(stream, eta,
                   c.drift_exact_gradient ? GradientEstimator::kExact
                                          : GradientEstimator::kDifferenceReward,
                   rng);
    log.begin_episode(0);
    for (const auto& r : trace.rows) {
      log.row(r.achieved, 2.0 * r.half_opt, c.drift.blocks.size(), 0, "");
    }
    returns.push_back(log.episode_return());
  } else {
    const EnvFactory make_env = make_factory(c);
    if (contains(kTrainMethods, c.method)) {
      TabularSoftmaxPolicy policy;
      TrainOptions options;
      options.episodes = c.episodes;
      options.eta = c.eta ? *c.eta : auto_train_eta(c, make_env, root);
      options.baseline = c.baseline;
      options.reward = c.method == "submapg" ? RewardMode::kDifference
                                             : RewardMode::kShared;
      options.record_opt = c.brute_force_opt;
      submapg_train(make_env, policy, options, root.derive(1),
                    [&](std::size_t k, const Trajectory& traj,
                        const TabularSoftmaxPolicy&) {
                      log.begin_episode(k);
                      for (const auto& r : traj) {
                        log.row(r.value, r.opt, r.observations.size(), r.targets,
                                r.digest);
                      }
                      returns.push_back(log.episode_return());
                    });
      policy_rows = policy.rows();
      if (c.save_policy) {
        std::ostringstream os;
        policy.save(os);
        out.policy = os.str();
      }
    } else {
      auto env = make_env();
      const Rng play = root.derive(1);
      for (std::size_t k = 0; k < c.episodes; ++k) {
        Rng episode = play.derive(k);
        Rng env_rng = episode.derive(0);
        Rng act_rng = episode.derive(1);
        env->reset(env_rng);
        log.begin_episode(k);
        while (!env->done()) {
          const auto f = env->utility();
          const std::string digest = env->digest();
          FeasibleSet a;
          if (c.method == "csg_global") {
            a = csg(*f, Sensing::kGlobal);
          } else if (c.method == "csg_local") {
            a = csg(*f, Sensing::kLocal);
          } else if (c.method == "online_local_greedy") {
            a = online_local_greedy(*f, env->comm_graph());
          } else {
            a = random_policy(f->matroid(), act_rng);
          }
          std::optional<double> opt;
          if (c.brute_force_opt) opt = brute_force_opt(*f).value;
          log.row(f->value(a), opt, env->active_agents().size(),
                  env->active_targets(), digest);
          env->step(a, env_rng);
        }
        returns.push_back(log.episode_return());
      }
    }
  }

  out.csv = log.text();
  out.final_return = returns.empty() ? 0.0 : returns.back();
  out.mean_return =
      returns.empty() ? 0.0
                      : std::accumulate(returns.begin(), returns.end(), 0.0) /
                            static_cast<double>(returns.size());
  const auto regret = log.cum_regret();
  std::ostringstream row;
  row << out.run_id << ',' << seed << ',' << c.method << ',' << to_string(c.env)
      << ',' << returns.size() << ',' << log.rounds() << ','
      << format_number(out.final_return) << ',' << format_number(out.mean_return)
      << ',' << (regret ? format_number(*regret) : std::string()) << ','
      << policy_rows;
  out.summary_row = row.str();
  return out;
}

namespace {

void write_file(const fs::path& path, const std::string& text,
                std::vector<std::string>& written) {
  std::ofstream f(path, std::ios::binary);
  if (!f.is_open()) throw Error("cannot open '" + path.string() + "'");
  written.push_back(path.string());
  f << text;
  f.close();
  if (!f) throw Error("cannot write '" + path.string() + "'");
}

std::pair<double, double> mean_std(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, v.size() > 1 ? std::sqrt(ss / (v.size() - 1)) : 0.0};
}

}  // namespace

RunReport run(const ExperimentConfig& c, const std::string& out_dir, int jobs) {
  const std::size_t n = c.seeds.size();
  std::vector<RunOutput> outputs(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
  for (std::size_t i = 0; i < n; ++i) {
    try {
      outputs[i] = run_single(c, c.seeds[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  RunReport report;
  std::vector<std::string> written;
  const fs::path dir(out_dir);
  const bool created = !fs::exists(dir);
  try {
    fs::create_directories(dir);
    std::string summary = join_header(summary_columns());
    std::vector<double> finals, means;
    for (const auto& o : outputs) {
      write_file(dir / (o.run_id + ".csv"), o.csv, written);
      if (c.save_policy && !o.policy.empty()) {
        write_file(dir / (o.run_id + ".policy"), o.policy, written);
      }
      summary += o.summary_row + "\n";
      finals.push_back(o.final_return);
      means.push_back(o.mean_return);
    }
    write_file(dir / (c.name + "-summary.csv"), summary, written);
    const auto [fm, fs_] = mean_std(finals);
    const auto [mm, ms] = mean_std(means);
    std::ostringstream text;
    text << "experiment " << c.name << ": env " << to_string(c.env) << ", method "
         << c.method << ", " << n << " seed(s), " << c.episodes << " episode(s)\n"
         << "final episode return: " << format_number(fm) << " +/- "
         << format_number(fs_) << '\n'
         << "mean episode return:  " << format_number(mm) << " +/- "
         << format_number(ms) << '\n';
    report.summary_text = text.str();
    write_file(dir / (c.name + "-summary.txt"), report.summary_text, written);
  } catch (...) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    if (created) fs::remove(dir, ec);
    throw;
  }
  report.files = written;
  return report;
}

std::string opt_dump(const ExperimentConfig& c, std::uint64_t seed,
                     std::uint64_t cap) {
  std::ostringstream out;
  out << "round,opt,opt_set,csg_global\n";
  if (c.env == EnvKind::kDrift) {
    DriftingCoverageStream stream(c.drift, seed);
    for (std::size_t t = 0; t < stream.horizon(); ++t) {
      const auto r = stream.round(t);
      const auto best = brute_force_opt(*r.utility, cap);
      out << t + 1 << ',' << format_number(best.value) << ",\""
          << best.set.to_string() << "\"," << format_number(r.utility->value(csg(*r.utility)))
          << '\n';
    }
    return out.str();
  }
  auto env = make_factory(c)();
  Rng env_rng = Rng(seed).derive(1).derive(0).derive(0);
  env->reset(env_rng);
  std::size_t t = 0;
  while (!env->done()) {
    const auto f = env->utility();
    const auto best = brute_force_opt(*f, cap);
    const auto greedy = csg(*f);
    out << ++t << ',' << format_number(best.value) << ",\"" << best.set.to_string()
        << "\"," << format_number(f->value(greedy)) << '\n';
    env->step(greedy, env_rng);
  }
  return out.str();
}

}  // namespace submapg
