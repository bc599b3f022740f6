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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "submapg/errors.hpp"
#include "submapg/harness/bench.hpp"
#include "submapg/harness/experiment.hpp"
#include "submapg/harness/verify.hpp"

namespace {

using namespace submapg;

std::string output_dir(const std::string& flag, const std::string& configured) {
  if (!flag.empty()) return flag;
  if (!configured.empty()) return configured;
  return default_output_dir();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path().empty()
                                          ? std::filesystem::path(".")
                                          : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write '" + path.string() + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent submodular coordination: experiments and checks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string suite;
  std::string out;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool adversarial = false;

  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--seed", seed, "Run this seed instead of the configured list");
  run->add_option("--out", out, "Output directory");
  run->add_option("--jobs", jobs, "Seeds run concurrently")->check(CLI::PositiveNumber);

  auto* ver = app.add_subcommand("verify", "Run an invariant suite");
  ver->add_option("suite", suite, "properties | stagewise | regret | learning | all")
      ->required();
  ver->add_option("--seed", seed, "Seed for instance generation");
  ver->add_option("--out", out, "Directory for the JSON report");
  ver->add_flag("--adversarial", adversarial,
                "Regret suite on a stream with alternating maximizers");

  auto* ben = app.add_subcommand("bench", "Time the main kernels");
  ben->add_option("config", config_path, "Config file with a [bench] section")
      ->required();
  ben->add_option("--seed", seed, "Seed for generated instances");
  ben->add_option("--out", out, "Directory for bench.txt");

  auto* opt = app.add_subcommand("opt", "Dump per-round brute-force OPT");
  opt->add_option("config", config_path, "Config file")->required();
  opt->add_option("--seed", seed, "Seed (default: first configured seed)");
  opt->add_option("--out", out, "Directory for <name>-opt.csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      ExperimentConfig config = load_experiment(config_path);
      if (seed) config.seeds = {*seed};
      const auto report = submapg::run(config, output_dir(out, config.out), jobs);
      std::cout << report.summary_text;
      for (const auto& f : report.files) std::cout << "wrote " << f << '\n';
      return 0;
    }
    if (ver->parsed()) {
      VerifyOptions options;
      options.seed = seed.value_or(0);
      options.adversarial = adversarial;
      const auto report = verify(suite, options);
      std::cout << report.to_text();
      const auto path =
          std::filesystem::path(output_dir(out, "")) / ("verify-" + suite + ".json");
      write_text(path, report.to_json());
      std::cout << "wrote " << path.string() << '\n';
      return report.passed() ? 0 : 1;
    }
    if (ben->parsed()) {
      BenchConfig config = parse_bench(ConfigFile::load(config_path));
      if (seed) config.seed = *seed;
      const std::string table = format_bench(bench(config));
      std::cout << table;
      if (!out.empty()) write_text(std::filesystem::path(out) / "bench.txt", table);
      return 0;
    }
    if (opt->parsed()) {
      const ExperimentConfig config = load_experiment(config_path);
      const std::string csv = opt_dump(config, seed.value_or(config.seeds.front()));
      if (out.empty()) {
        std::cout << csv;
      } else {
        const auto path = std::filesystem::path(out) / (config.name + "-opt.csv");
        write_text(path, csv);
        std::cout << "wrote " << path.string() << '\n';
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
