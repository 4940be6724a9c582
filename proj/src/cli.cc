// Copyright 2026 The ppdo Authors
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

#include "ppdo/cli.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "ppdo/error.h"
#include "ppdo/protocol.h"
#include "ppdo/report_json.h"
#include "ppdo/scenario.h"

namespace ppdo {
namespace {

constexpr const char* kUsage =
    "usage: ppdo <command> <scenario.toml> [options]\n"
    "\n"
    "commands:\n"
    "  analyze <scenario> [--require-private]\n"
    "      privacy report (JSON) for the scenario's coalition and sigma\n"
    "  run <scenario> [--trace out.csv] [--report out.json] [--require-private]\n"
    "      run both protocol phases and the privacy analysis\n"
    "  kl <scenario> [--trials N] [--seed S]\n"
    "      closed-form and Monte-Carlo KL between the views under the\n"
    "      scenario's alpha and its [comparison] alpha\n"
    "  sweep <scenario> --sigmas 0.5,1,2\n"
    "      epsilon and optimiser accuracy for each sigma\n"
    "\n"
    "exit codes: 0 ok, 1 invalid scenario or run failure, 2 breach with\n"
    "--require-private, 64 usage error\n";

struct Options {
  std::string scenario;
  bool require_private = false;
  std::string trace_path;
  std::string report_path;
  int trials = 0;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::vector<double> sigmas;
};

int BreachExit(const Options& opts, const Epsilon& epsilon) {
  return opts.require_private && IsBreach(epsilon) ? kExitBreach : kExitOk;
}

int Analyze(const Options& opts, std::ostream& out) {
  const Scenario s = LoadScenario(opts.scenario);
  PrivacyReport report;
  if (s.sigma > 0.0) {
    report = ComputeEpsilon(s.graph, s.adversary, s.sigma);
  } else {
    report = ComputeEpsilon(s.graph, s.adversary, 1.0);
    report.sigma = 0.0;
    report.epsilon = Breach{BreachReason::kNoNoise};
  }
  out << ToJson(report).dump(2) << '\n';
  return BreachExit(opts, report.epsilon);
}

int Run(const Options& opts, std::ostream& out, std::ostream& err) {
  const Scenario s = LoadScenario(opts.scenario);
  RunReport report = RunProtocol(s);
  if (!opts.trace_path.empty()) {
    std::ofstream trace(opts.trace_path);
    if (!trace) {
      err << "cannot write " << opts.trace_path << '\n';
      return kExitFailure;
    }
    WriteTraceCsv(report.trace, trace);
    report.trace_path = opts.trace_path;
  }
  const std::string json = ToJson(report).dump(2) + "\n";
  if (opts.report_path.empty()) {
    out << json;
  } else {
    std::ofstream file(opts.report_path, std::ios::binary);
    if (!file) {
      err << "cannot write " << opts.report_path << '\n';
      return kExitFailure;
    }
    file << json;
  }
  return BreachExit(opts, report.privacy.epsilon);
}

int Kl(const Options& opts, std::ostream& out) {
  const Scenario s = LoadScenario(opts.scenario);
  if (!s.comparison_alpha) {
    throw ScenarioError({{"comparison", ErrorCode::kValidationError,
                          "kl needs a [comparison] block with alpha rows"}});
  }
  if (!(s.sigma > 0.0)) {
    throw ScenarioError({{"sigma", ErrorCode::kInvalidSigma, "kl needs sigma > 0"}});
  }
  const AffineCoefficients alpha = AffineCoefficientsOf(s.costs);
  const AffineCoefficients& alpha_prime = *s.comparison_alpha;
  const PrivacyReport privacy = ComputeEpsilon(s.graph, s.adversary, s.sigma);

  nlohmann::json result;
  result["sigma"] = s.sigma;
  result["corrupted"] =
      std::vector<int>(s.adversary.corrupted.begin(), s.adversary.corrupted.end());
  const double dist = Distance(alpha, alpha_prime);
  result["distance"] = dist;
  if (const double* eps = std::get_if<double>(&privacy.epsilon)) {
    const int trials = opts.trials > 0 ? opts.trials : s.kl_trials;
    const MonteCarloKl mc = ViewKlMonteCarlo(s.graph, s.adversary, s.sigma, alpha,
                                             alpha_prime, trials,
                                             opts.has_seed ? opts.seed : s.seed);
    result["epsilon"] = *eps;
    result["closed_form"] = ViewKlClosedForm(s.graph, s.adversary, s.sigma, alpha,
                                             alpha_prime);
    result["monte_carlo"] = {{"estimate", mc.estimate},
                             {"trials", mc.trials},
                             {"degenerate", mc.degenerate}};
    result["bound"] = *eps * dist * dist;
  } else {
    result["epsilon"] = "breach";
    result["closed_form"] = nullptr;
    result["monte_carlo"] = nullptr;
    result["bound"] = nullptr;
  }
  out << result.dump(2) << '\n';
  return BreachExit(opts, privacy.epsilon);
}

int Sweep(const Options& opts, std::ostream& out) {
  const Scenario s = LoadScenario(opts.scenario);
  const std::vector<SweepRow> rows = SweepSigma(s, opts.sigmas);
  out << ToJson(std::span<const SweepRow>(rows)).dump(2) << '\n';
  const bool any_breach =
      std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return IsBreach(r.epsilon); });
  return opts.require_private && any_breach ? kExitBreach : kExitOk;
}

}  // namespace

int RunCli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> kCommands = {"analyze", "run", "kl", "sweep"};
  if (args.size() < 2 ||
      std::find(kCommands.begin(), kCommands.end(), args[1]) == kCommands.end()) {
    if (args.size() >= 2 && (args[1] == "-h" || args[1] == "--help")) {
      out << kUsage;
      return kExitOk;
    }
    err << kUsage;
    return kExitUsage;
  }

  Options opts;
  CLI::App app{"Privacy-preserving distributed optimisation simulator", "ppdo"};
  app.require_subcommand(1);
  auto add_scenario = [&](CLI::App* cmd) {
    cmd->add_option("scenario", opts.scenario, "scenario TOML file")->required();
  };
  CLI::App* analyze = app.add_subcommand("analyze", "privacy report as JSON");
  add_scenario(analyze);
  analyze->add_flag("--require-private", opts.require_private,
                    "exit 2 when there is no finite epsilon");

  CLI::App* run = app.add_subcommand("run", "run the protocol end to end");
  add_scenario(run);
  run->add_option("--trace", opts.trace_path, "write the optimiser trace as CSV");
  run->add_option("--report", opts.report_path, "write the run report JSON here");
  run->add_flag("--require-private", opts.require_private,
                "exit 2 when there is no finite epsilon");

  CLI::App* kl = app.add_subcommand("kl", "KL divergence between two views");
  add_scenario(kl);
  kl->add_option("--trials", opts.trials, "Monte-Carlo trials")->check(CLI::Range(10000, 100000000));
  CLI::Option* seed_option =
      kl->add_option("--seed", opts.seed, "Monte-Carlo seed (default: scenario seed)");
  kl->add_flag("--require-private", opts.require_private,
               "exit 2 when there is no finite epsilon");

  CLI::App* sweep = app.add_subcommand("sweep", "sweep the noise scale");
  add_scenario(sweep);
  sweep->add_option("--sigmas", opts.sigmas, "comma-separated sigma values")
      ->delimiter(',')
      ->required();
  sweep->add_flag("--require-private", opts.require_private,
                  "exit 2 when any sigma has no finite epsilon");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
    opts.has_seed = seed_option->count() > 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << kUsage;
    return kExitUsage;
  }

  try {
    if (analyze->parsed()) return Analyze(opts, out);
    if (run->parsed()) return Run(opts, out, err);
    if (kl->parsed()) return Kl(opts, out);
    return Sweep(opts, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace ppdo
