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

#include "cantorprod/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "cantorprod/errors.hpp"
#include "cantorprod/interval_set.hpp"
#include "cantorprod/oracle.hpp"
#include "cantorprod/phi_curve.hpp"
#include "cantorprod/serialize.hpp"

namespace cantorprod {

namespace {

constexpr int kMaxListed = 10;
constexpr int kDefaultVerifyRank = 20;

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::UsageError, what); }

Rational rational_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    usage(flag + ": " + e.what());
  }
}

std::uint64_t count_value(const std::string& source, const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    usage(source + ": expected a positive integer, got '" + text + "'");
  }
  if (used != text.size() || v == 0 || text.front() == '-')
    usage(source + ": expected a positive integer, got '" + text + "'");
  return v;
}

std::optional<int> int_or_auto(const std::string& flag, const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    usage(flag + ": expected a non-negative integer or 'auto', got '" + text + "'");
  }
  if (used != text.size() || v < 0)
    usage(flag + ": expected a non-negative integer or 'auto', got '" + text + "'");
  return v;
}

std::vector<Rational> parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos || text.find(':', b + 1) != std::string::npos)
    usage("--grid: expected start:end:steps, got '" + text + "'");
  const Rational start = rational_flag("--grid", text.substr(0, a));
  const Rational end = rational_flag("--grid", text.substr(a + 1, b - a - 1));
  const auto steps = count_value("--grid", text.substr(b + 1));
  if (steps > 100000) usage("--grid: too many steps");
  if (steps > 1 && !(start < end)) usage("--grid: start must be below end");
  return linear_grid(start, end, static_cast<int>(steps));
}

struct RawFlags {
  int m = 2;
  std::string lambda;
  std::string rank = "auto";
  std::string depth = "auto";
  std::string level = "auto";
  std::string target_err;
  std::string mode = "certified";
  std::string out;
  std::string grid;
  std::string jobs;
  std::string budget;
  std::string bound = "stated";
};

}  // namespace

std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

RunConfig parse_config(const std::vector<std::string>& args, const EnvLookup& env) {
  CLI::App app{"Exact interval structure and certified measure enclosures for products of "
               "uniform Cantor sets.",
               "cantorprod"};
  app.require_subcommand(1);
  app.footer(
      "Environment:\n"
      "  CANTORPROD_BUDGET  default for --budget\n"
      "  CANTORPROD_JOBS    default for --jobs\n"
      "Flags take precedence over the environment.");
  RawFlags raw;

  auto add_m = [&](CLI::App* c) {
    c->add_option("--m", raw.m, "number of maps (2..36)")->capture_default_str();
  };
  auto add_lambda = [&](CLI::App* c) {
    c->add_option("--lambda", raw.lambda, "contraction ratio, exact (p/q or decimal)")
        ->required();
  };
  auto add_truncation = [&](CLI::App* c) {
    c->add_option("--rank", raw.rank, "rank k of the core, or auto")->capture_default_str();
    c->add_option("--depth", raw.depth, "number N of scaled copies, or auto")
        ->capture_default_str();
  };
  auto add_target = [&](CLI::App* c, const char* dflt) {
    c->add_option("--target-err", raw.target_err,
                  std::string("enclosure width used to resolve auto parameters (default ") +
                      dflt + ")");
  };
  auto add_mode = [&](CLI::App* c) {
    c->add_option("--mode", raw.mode, "certified|exploratory")
        ->check(CLI::IsMember({"certified", "exploratory"}))
        ->capture_default_str();
  };
  auto add_out = [&](CLI::App* c, std::vector<std::string> allowed) {
    c->add_option("--out", raw.out, "output format")->check(CLI::IsMember(allowed));
  };
  auto add_resources = [&](CLI::App* c) {
    c->add_option("--jobs", raw.jobs, "worker threads (default 1)");
    c->add_option("--budget", raw.budget, "cap on generated product intervals (default 50000000)");
  };
  auto add_bound = [&](CLI::App* c) {
    c->add_option("--bound", raw.bound, "stated|tight error bound for the core")
        ->check(CLI::IsMember({"stated", "tight"}))
        ->capture_default_str();
  };

  auto* measure = app.add_subcommand("measure", "certified enclosure of the product measure");
  add_m(measure), add_lambda(measure), add_truncation(measure), add_target(measure, "1/1000");
  add_mode(measure), add_out(measure, {"json"}), add_resources(measure), add_bound(measure);

  auto* structure = app.add_subcommand(
      "structure", "components of the rank-k core, or of the union of N+1 scaled copies "
                   "when --depth is given");
  add_m(structure), add_lambda(structure), add_truncation(structure);
  add_target(structure, "1/1000"), add_mode(structure), add_out(structure, {"json", "csv"});
  add_resources(structure), add_bound(structure);

  auto* curve_cmd = app.add_subcommand("curve", "enclosures over a lambda grid");
  add_m(curve_cmd);
  curve_cmd->add_option("--grid", raw.grid,
                        "start:end:steps (default 64 points on [1/(m+1), 1/m - 1/(64m)])");
  add_target(curve_cmd, "1/100"), add_out(curve_cmd, {"csv", "plot", "json"});
  add_resources(curve_cmd), add_bound(curve_cmd);

  auto* verify = app.add_subcommand("verify", "interval-filling conditions at (m, lambda)");
  add_m(verify), add_lambda(verify), add_mode(verify), add_out(verify, {"json"});
  verify->add_option("--rank", raw.rank, "rank for the m = 2 coverage check (default 20)");
  add_resources(verify);

  auto* oracle = app.add_subcommand("oracle", "brute-force outer cover against the enclosure");
  add_m(oracle), add_lambda(oracle), add_truncation(oracle), add_target(oracle, "1/1000");
  oracle->add_option("--level", raw.level, "level n of the outer cover, or auto")
      ->capture_default_str();
  add_mode(oracle), add_out(oracle, {"json"}), add_resources(oracle), add_bound(oracle);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  RunConfig cfg;
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    cfg.help_text = app.help();
    return cfg;
  } catch (const CLI::CallForAllHelp&) {
    cfg.help_text = app.help("", CLI::AppFormatMode::All);
    return cfg;
  } catch (const CLI::ParseError& e) {
    usage(e.what());
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  if (name == "measure") cfg.command = Command::Measure;
  if (name == "structure") cfg.command = Command::Structure;
  if (name == "curve") cfg.command = Command::Curve;
  if (name == "verify") cfg.command = Command::Verify;
  if (name == "oracle") cfg.command = Command::Oracle;

  if (raw.m < 2 || raw.m > 36) usage("--m: expected an integer in 2..36");
  cfg.m = raw.m;
  if (!raw.lambda.empty()) cfg.lambda = rational_flag("--lambda", raw.lambda);
  cfg.rank_k = int_or_auto("--rank", raw.rank);
  cfg.depth_N = int_or_auto("--depth", raw.depth);
  cfg.oracle_level = int_or_auto("--level", raw.level);
  cfg.mode = raw.mode == "exploratory" ? Mode::Exploratory : Mode::Certified;
  cfg.bound = raw.bound == "tight" ? BoundKind::Tight : BoundKind::Stated;

  const char* default_target = cfg.command == Command::Curve ? "1/100" : "1/1000";
  cfg.target_err = rational_flag("--target-err",
                                 raw.target_err.empty() ? default_target : raw.target_err);
  if (sgn(cfg.target_err) <= 0) usage("--target-err: must be positive");

  if (raw.out.empty())
    cfg.output = cfg.command == Command::Curve ? OutputFormat::Csv : OutputFormat::Json;
  else if (raw.out == "csv")
    cfg.output = OutputFormat::Csv;
  else if (raw.out == "plot")
    cfg.output = OutputFormat::Plot;
  else
    cfg.output = OutputFormat::Json;

  if (!raw.budget.empty())
    cfg.budget = count_value("--budget", raw.budget);
  else if (auto v = env("CANTORPROD_BUDGET"))
    cfg.budget = count_value("CANTORPROD_BUDGET", *v);

  std::uint64_t jobs = 1;
  if (!raw.jobs.empty())
    jobs = count_value("--jobs", raw.jobs);
  else if (auto v = env("CANTORPROD_JOBS"))
    jobs = count_value("CANTORPROD_JOBS", *v);
  if (jobs > 256) usage("--jobs: at most 256");
  cfg.jobs = static_cast<unsigned>(jobs);

  if (!raw.grid.empty()) cfg.grid = parse_grid(raw.grid);
  return cfg;
}

namespace {

ApproxOptions approx_options(const RunConfig& cfg) {
  ApproxOptions o;
  o.core.budget = cfg.budget;
  o.core.jobs = cfg.jobs;
  o.bound = cfg.bound;
  o.materialize = false;
  return o;
}

// Fills in whichever of (k, N) were left on auto.
Truncation resolve(const Params& p, const RunConfig& cfg) {
  Truncation t = resolve_truncation(p, cfg.target_err, cfg.budget, cfg.bound);
  if (cfg.depth_N) {
    t.depth_N = *cfg.depth_N;
    if (!cfg.rank_k) {
      // Smallest k meeting the target at the given N, if any does.
      for (int k = 0; k <= t.rank_k; ++k)
        if (width_bound(p, k, t.depth_N, cfg.bound) <= cfg.target_err) {
          t.rank_k = k;
          break;
        }
    }
  }
  if (cfg.rank_k) t.rank_k = *cfg.rank_k;
  return t;
}

int oracle_auto_level(int m) {
  int n = 0;
  for (;;) {
    std::uint64_t count = 1;
    for (int i = 0; i <= n; ++i) count *= static_cast<std::uint64_t>(m);
    if (count * (count + 1) / 2 > kDefaultOracleBudget) return n;
    ++n;
  }
}

void run_measure(const RunConfig& cfg, const Params& p, std::ostream& out, std::ostream& err) {
  const ApproxOptions o = approx_options(cfg);
  if (!cfg.rank_k && !cfg.depth_N) {
    const TargetedApprox t = approximate_to_target(p, cfg.target_err, o);
    err << "resolved rank_k=" << t.approx.enclosure.rank_k
        << " depth_N=" << t.approx.enclosure.depth_N << (t.target_met ? "" : " (budget-limited)")
        << '\n';
    out << dump(enclosure_json(p, t.approx.enclosure, &t));
    return;
  }
  const Truncation t = resolve(p, cfg);
  err << "rank_k=" << t.rank_k << " depth_N=" << t.depth_N << '\n';
  const ProductApprox a = full_product_approx(p, t.rank_k, t.depth_N, o);
  out << dump(enclosure_json(p, a.enclosure));
}

void run_structure(const RunConfig& cfg, const Params& p, std::ostream& out, std::ostream& err) {
  ApproxOptions o = approx_options(cfg);
  const Truncation t = resolve(p, cfg);
  IntervalSet set;
  if (cfg.depth_N) {
    o.materialize = true;
    set = full_product_approx(p, t.rank_k, *cfg.depth_N, o).set;
  } else {
    set = rank_truncated_core(p, t.rank_k, o.core);
  }
  err << "rank_k=" << t.rank_k << " components=" << set.size() << '\n';
  if (cfg.output == OutputFormat::Csv) {
    write_interval_set_csv(out, set);
    return;
  }
  Json j;
  j["m"] = p.m();
  j["lambda"] = to_exact_string(p.lambda());
  j["rank_k"] = t.rank_k;
  if (cfg.depth_N) j["depth_N"] = *cfg.depth_N;
  j["components"] = components_json(components_report(set, kMaxListed));
  out << dump(j);
}

void run_curve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::vector<Rational> grid = cfg.grid.empty() ? default_grid(cfg.m) : cfg.grid;
  const ApproxOptions o = approx_options(cfg);
  std::vector<CurvePoint> points;
  points.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto pts = curve(cfg.m, {grid[i]}, cfg.target_err, o);
    err << "point " << (i + 1) << "/" << grid.size() << " lambda=" << to_exact_string(grid[i])
        << " rank_k=" << pts.front().rank_k << (pts.front().target_met ? "" : " (budget-limited)")
        << '\n';
    points.push_back(std::move(pts.front()));
  }
  switch (cfg.output) {
    case OutputFormat::Csv:
      write_curve_csv(out, points);
      break;
    case OutputFormat::Plot:
      write_curve_plot(out, points);
      break;
    case OutputFormat::Json:
      out << dump(curve_json(cfg.m, points, monotonicity_report(points)));
      break;
  }
}

void run_verify(const RunConfig& cfg, const Params& p, std::ostream& out) {
  Json j = chain_json(p, verify_chain_conditions(p));
  if (p.m() == 2 && Rational(11, 25) < p.lambda() && p.lambda() < Rational(1, 2)) {
    CoreOptions o;
    o.budget = cfg.budget;
    o.jobs = cfg.jobs;
    j["remark2"] =
        remark2_json(remark2_check(p, cfg.rank_k.value_or(kDefaultVerifyRank), o));
  }
  out << dump(j);
}

void run_oracle(const RunConfig& cfg, const Params& p, std::ostream& out, std::ostream& err) {
  const int n = cfg.oracle_level.value_or(oracle_auto_level(p.m()));
  const Truncation t = resolve(p, cfg);
  err << "level_n=" << n << " rank_k=" << t.rank_k << " depth_N=" << t.depth_N << '\n';
  out << dump(sandwich_json(p, sandwich_check(p, n, t.rank_k, t.depth_N, approx_options(cfg))));
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.help_text) {
    out << *cfg.help_text;
    return 0;
  }
  try {
    if (cfg.command == Command::Curve) {
      run_curve(cfg, out, err);
      return 0;
    }
    const Params p = params_new(cfg.m, cfg.lambda, cfg.mode);
    switch (cfg.command) {
      case Command::Measure:
        run_measure(cfg, p, out, err);
        break;
      case Command::Structure:
        run_structure(cfg, p, out, err);
        break;
      case Command::Verify:
        run_verify(cfg, p, out);
        break;
      case Command::Oracle:
        run_oracle(cfg, p, out, err);
        break;
      case Command::Curve:
        break;
    }
    return 0;
  } catch (const Error& e) {
    out << dump(error_json(e.code(), e.what()));
    return 1;
  } catch (const std::bad_alloc&) {
    out << dump(error_json(ErrorCode::ResourceBudgetExceeded, "out of memory"));
    return 1;
  }
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const EnvLookup& env) {
  RunConfig cfg;
  try {
    cfg = parse_config(args, env);
  } catch (const Error& e) {
    err << "cantorprod: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  }
  return run_command(cfg, out, err);
}

}  // namespace cantorprod
