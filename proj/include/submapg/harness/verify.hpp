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

// Built-in invariant suites behind `verify`.

#include <cstdint>
#include <string>
#include <vector>

namespace submapg {

struct CheckResult {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool passed = false;
  // Report-only checks never fail the suite.
  bool asserted = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  std::string to_json() const;
  std::string to_text() const;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  // Regret suite: drive the stream with alternating maximizers and report
  // the bound without asserting it.
  bool adversarial = false;
};

// suite: properties | stagewise | regret | learning | all. Throws ConfigError
// for other names.
VerifyReport verify(const std::string& suite, const VerifyOptions& options = {});

const std::vector<std::string>& verify_suites();

}  // namespace submapg
