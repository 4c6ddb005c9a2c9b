/*
 * Copyright 2026 The wiretap-evt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
// wiretap-cli: runs the experiments and validation suites of libwiretap
// through its C interface.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wiretap/wiretap.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr const char* kSeedEnv = "WIRETAP_SEED";

struct Options {
  std::int64_t users = 0;
  std::string eves;
  std::string antennas;
  double power = 1.0;
  double alpha = 0.0;
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  int alpha_steps = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  int terms = 0;
  std::string conditioning;
  std::string conditioning_impl;
  std::string user_threshold;
  unsigned threads = 0;
  std::string out;
  std::string format;
  double target_lambda = 1.0;
  double delta = 0.01;
  std::string suite = "all";
  std::string config;
};

struct UsageFailure {
  std::string message;
};

[[noreturn]] void usage_fail(const std::string& msg) { throw UsageFailure{msg}; }

enum Flags : unsigned {
  kShape = 1u << 0,    // --users --eves --t --power
  kGrid = 1u << 1,     // --alpha --alpha-min --alpha-max --alpha-steps
  kSim = 1u << 2,      // --trials --seed --threads
  kSeries = 1u << 3,   // --terms --user-threshold
  kCond = 1u << 4,     // --conditioning --conditioning-impl
  kScaling = 1u << 5,  // --target-lambda
  kOutput = 1u << 6,   // --out --format
};

void add_options(CLI::App* sub, Options& o, unsigned flags) {
  if (flags & kShape) {
    sub->add_option("-K,--users", o.users, "number of users K");
    sub->add_option("-M,--eves", o.eves, "number of eavesdroppers M (fig3: LO:HI[:STEP])");
    sub->add_option("--t", o.antennas, "transmit antennas t, comma separated");
    sub->add_option("--power", o.power, "transmit power P (default 1)");
  }
  if (flags & kGrid) {
    sub->add_option("--alpha", o.alpha, "single threshold ratio alpha = 2^Rs");
    sub->add_option("--alpha-min", o.alpha_min, "grid start (default 1)");
    sub->add_option("--alpha-max", o.alpha_max, "grid end (default 4)");
    sub->add_option("--alpha-steps", o.alpha_steps, "grid points (default 200)");
  }
  if (flags & kSim) {
    sub->add_option("--trials", o.trials, "Monte Carlo trials");
    sub->add_option("--seed", o.seed, std::string("master seed (default $") + kSeedEnv + " or 42)");
    sub->add_option("--threads", o.threads, "worker threads (default: all cores)");
  }
  if (flags & kSeries) {
    sub->add_option("--terms", o.terms, "series truncation (default 100)");
    sub->add_option("--user-threshold", o.user_threshold, "u_k for the lemmas: exact|asymptotic")
        ->check(CLI::IsMember({"exact", "asymptotic"}));
    sub->add_option("--delta", o.delta, "DKW confidence level (default 0.01)");
  }
  if (flags & kCond) {
    sub->add_option("--conditioning", o.conditioning, "none|eve|user")
        ->check(CLI::IsMember({"none", "eve", "user"}));
    sub->add_option("--conditioning-impl", o.conditioning_impl, "rejection|pot")
        ->check(CLI::IsMember({"rejection", "pot"}));
  }
  if (flags & kScaling) {
    sub->add_option("--target-lambda", o.target_lambda, "target Lambda (default 1)");
  }
  if (flags & kOutput) {
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  }
  sub->add_option("--config", o.config, "JSON file of flag values; flags take precedence");
}

bool given(const CLI::App* sub, const std::string& name) {
  try {
    return sub->count(name) > 0;
  } catch (const CLI::OptionNotFound&) {
    return false;
  }
}

std::int64_t parse_int(const std::string& s, const char* what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    usage_fail(std::string("invalid ") + what + " '" + s + "'");
  }
  if (pos != s.size()) usage_fail(std::string("invalid ") + what + " '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

// Turns the JSON config into flag arguments placed before the user's own,
// so that command-line values win under the take-last policy.
std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) usage_fail("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    usage_fail("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) usage_fail("config file must hold a JSON object");
  std::vector<std::string> args;
  for (const auto& [key, value] : j.items()) {
    if (key == "config") usage_fail("config files cannot nest");
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) text += ',';
        text += value[i].is_string() ? value[i].get<std::string>() : value[i].dump();
      }
    } else if (value.is_number() || value.is_boolean()) {
      text = value.dump();
    } else {
      usage_fail("config key '" + key + "' has an unsupported value");
    }
    args.push_back("--" + key);
    args.push_back(text);
  }
  return args;
}

std::optional<std::string> find_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return std::nullopt;
}

wt_experiment experiment_of(const std::string& name) {
  if (name == "fig1") return WT_FIG1;
  if (name == "fig2") return WT_FIG2;
  if (name == "fig3") return WT_FIG3;
  if (name == "outage") return WT_OUTAGE;
  if (name == "scaling") return WT_SCALING;
  return WT_VALIDATE;
}

wt_experiment_spec build_spec(const CLI::App* sub, const Options& o) {
  wt_experiment_spec spec;
  const wt_experiment experiment = experiment_of(sub->get_name());
  wt_experiment_spec_init(&spec, experiment);

  if (const char* env = std::getenv(kSeedEnv); env && *env) {
    spec.seed = static_cast<std::uint64_t>(parse_int(env, kSeedEnv));
  }
  if (given(sub, "--seed")) spec.seed = o.seed;
  if (given(sub, "--users")) spec.users = o.users;
  if (given(sub, "--eves")) {
    if (experiment == WT_FIG3) {
      const auto parts = split(o.eves, ':');
      if (parts.size() == 1) {
        spec.eves_min = spec.eves_max = parse_int(parts[0], "--eves");
      } else if (parts.size() == 2 || parts.size() == 3) {
        spec.eves_min = parse_int(parts[0], "--eves");
        spec.eves_max = parse_int(parts[1], "--eves");
        if (parts.size() == 3) spec.eves_step = parse_int(parts[2], "--eves step");
      } else {
        usage_fail("--eves expects LO:HI or LO:HI:STEP");
      }
    } else {
      spec.eves = parse_int(o.eves, "--eves");
    }
  }
  if (given(sub, "--t")) {
    const auto parts = split(o.antennas, ',');
    if (parts.empty()) usage_fail("--t needs at least one value");
    if (parts.size() > WT_MAX_ANTENNA_VALUES) usage_fail("too many --t values");
    for (std::size_t i = 0; i < parts.size(); ++i) {
      spec.antennas[i] = static_cast<int>(parse_int(parts[i], "--t"));
    }
    spec.n_antennas = parts.size();
  }
  if (given(sub, "--power")) spec.power = o.power;

  const bool grid_flags =
      given(sub, "--alpha-min") || given(sub, "--alpha-max") || given(sub, "--alpha-steps");
  if (given(sub, "--alpha")) {
    if (grid_flags) usage_fail("--alpha cannot be combined with --alpha-min/max/steps");
    spec.alpha = o.alpha;
    if (experiment != WT_FIG3 && experiment != WT_SCALING) {
      spec.alpha_min = spec.alpha_max = o.alpha;
      spec.alpha_steps = 1;
    }
  }
  if (given(sub, "--alpha-min")) spec.alpha_min = o.alpha_min;
  if (given(sub, "--alpha-max")) spec.alpha_max = o.alpha_max;
  if (given(sub, "--alpha-steps")) {
    spec.alpha_steps = o.alpha_steps;
    if (o.alpha_steps < 2) usage_fail("--alpha-steps must be >= 2");
  }

  if (given(sub, "--trials")) spec.trials = o.trials;
  if (given(sub, "--threads")) spec.threads = o.threads;
  if (given(sub, "--terms")) spec.n_terms = o.terms;
  if (given(sub, "--delta")) spec.delta = o.delta;
  if (given(sub, "--user-threshold")) {
    spec.user_threshold =
        o.user_threshold == "exact" ? WT_USER_THRESHOLD_EXACT : WT_USER_THRESHOLD_ASYMPTOTIC;
  }
  if (given(sub, "--conditioning")) {
    spec.conditioning = o.conditioning == "eve"    ? WT_COND_EVE_ABOVE
                        : o.conditioning == "user" ? WT_COND_USER_ABOVE
                                                   : WT_COND_NONE;
    if (experiment == WT_FIG1 && spec.conditioning != WT_COND_NONE) {
      usage_fail("fig1 emits every conditioning already; --conditioning applies to outage");
    }
    if (experiment == WT_OUTAGE && !given(sub, "--trials") && spec.conditioning != WT_COND_NONE) {
      usage_fail("--conditioning needs --trials");
    }
  }
  if (given(sub, "--conditioning-impl")) {
    spec.conditioning_impl = o.conditioning_impl == "pot" ? WT_IMPL_POT : WT_IMPL_REJECTION;
  }
  if (given(sub, "--target-lambda")) spec.target_lambda = o.target_lambda;
  if (experiment == WT_VALIDATE) {
    if (o.suite.size() >= sizeof spec.suite) usage_fail("unknown suite '" + o.suite + "'");
    std::snprintf(spec.suite, sizeof spec.suite, "%s", o.suite.c_str());
  }
  spec.format = o.format == "json" || (experiment == WT_VALIDATE) ? WT_JSON : WT_CSV;
  if (experiment == WT_SCALING && o.format.empty()) spec.format = WT_JSON;
  return spec;
}

int exit_code_for(wt_status s) {
  switch (s) {
    case WT_ERR_USAGE: return kExitUsage;
    case WT_ERR_IO: return kExitIo;
    default: return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy-outage experiments for multi-user MISO links with eavesdroppers"};
  app.name("wiretap-cli");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Options o;

  const unsigned curves = kShape | kGrid | kSeries | kOutput;
  add_options(app.add_subcommand("fig1", "empirical and analytic outage CDFs (K=M=30, t=2,4,8)"),
              o, curves | kSim | kCond);
  add_options(app.add_subcommand("fig2", "lemma and corollary bounds (K=M=1000, t=4)"), o, curves);
  add_options(app.add_subcommand("fig3", "bounds against M at fixed alpha (K=1000, t=4, alpha=2)"),
              o, curves);
  add_options(app.add_subcommand("outage", "analytic outage curves, optionally with simulation"),
              o, curves | kSim | kCond);
  add_options(app.add_subcommand("scaling", "users needed for a target Lambda"), o,
              kShape | kGrid | kScaling | kOutput);
  auto* validate = app.add_subcommand("validate", "run the property suites; exit 0 iff all pass");
  add_options(validate, o, kSim | kOutput);
  validate->add_option("suite", o.suite, "specfun|evt|outage|montecarlo|all")
      ->check(CLI::IsMember({"specfun", "evt", "outage", "montecarlo", "all"}));

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (const auto path = find_config(argc, argv)) {
      const auto extra = config_arguments(*path);
      std::size_t at = 0;
      while (at < args.size() && !app.get_subcommand_no_throw(args[at])) ++at;
      if (at < args.size()) args.insert(args.begin() + static_cast<std::ptrdiff_t>(at) + 1,
                                        extra.begin(), extra.end());
    }
  } catch (const UsageFailure& u) {
    std::cerr << "error: " << u.message << '\n';
    return kExitUsage;
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  wt_experiment_spec spec;
  try {
    spec = build_spec(sub, o);
  } catch (const UsageFailure& u) {
    std::cerr << "error: " << u.message << '\n';
    return kExitUsage;
  }

  wt_output* output = nullptr;
  const wt_status status = wt_run(&spec, &output);
  if (status != WT_OK) {
    std::cerr << "error: " << wt_status_name(status) << ": " << wt_last_error() << '\n';
    return exit_code_for(status);
  }
  int code = wt_output_passed(output) ? 0 : kExitFailure;
  if (o.out.empty() || o.out == "-") {
    std::cout.write(wt_output_text(output), static_cast<std::streamsize>(wt_output_size(output)));
    std::cout.flush();
  } else if (const wt_status ws = wt_output_write(output, o.out.c_str()); ws != WT_OK) {
    std::cerr << "error: " << wt_status_name(ws) << ": " << wt_last_error() << '\n';
    code = exit_code_for(ws);
  }
  wt_output_free(output);
  return code;
}
