// Copyright 2026 The cantorprod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end shared by the cantorprod binary and the tests.

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cantorprod/cantor.hpp"
#include "cantorprod/product.hpp"

namespace cantorprod {

enum class Command { Measure, Structure, Curve, Verify, Oracle };
enum class OutputFormat { Json, Csv, Plot };

struct RunConfig {
  Command command = Command::Measure;
  int m = 2;
  Rational lambda;
  std::optional<int> rank_k;        // nullopt: resolved from target_err
  std::optional<int> depth_N;       // nullopt: resolved from target_err
  std::optional<int> oracle_level;  // nullopt: deepest level within budget
  Rational target_err;
  Mode mode = Mode::Certified;
  OutputFormat output = OutputFormat::Json;
  std::uint64_t budget = kDefaultProductBudget;
  unsigned jobs = 1;
  BoundKind bound = BoundKind::Stated;
  // Curve grid; empty means the default grid for m.
  std::vector<Rational> grid;
  // Set by --help; run_command prints it and exits 0.
  std::optional<std::string> help_text;
};

/// Returns the value of an environment variable, if set.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Reads the process environment.
std::optional<std::string> process_env(const std::string& name);

/// Parses arguments after the program name. Precedence: flags, then
/// CANTORPROD_BUDGET / CANTORPROD_JOBS, then defaults. Throws UsageError
/// naming the offending flag; unknown flags are rejected.
RunConfig parse_config(const std::vector<std::string>& args, const EnvLookup& env = process_env);

/// Runs one command, writing results to `out` and diagnostics to `err`.
/// Returns 0 on success and 1 on a computation error, which is reported as a
/// JSON object {"error": {"code", "message"}} on `out`.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_config + run_command; usage errors go to `err` with status 2.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const EnvLookup& env = process_env);

}  // namespace cantorprod
