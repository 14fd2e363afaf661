// Copyright 2026 The geopriv Authors
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

#include <iostream>
#include <map>
#include <string>
#include <string_view>

#include "CLI11.hpp"
#include "geopriv/cli.hpp"

namespace {

void add_param_flags(CLI::App* cmd, geopriv::ParamSet& p,
                     std::string& config_path, bool& print_config) {
  cmd->add_option("--config", config_path,
                  "key=value config file; flags override its values");
  cmd->add_flag("--print-config", print_config,
                "print the effective configuration before running");
  cmd->add_option("--eps-star", p.eps_star,
                  "distinguishability level within r-star");
  cmd->add_option("--r-star", p.r_star, "protection radius (m)");
  cmd->add_option("--alpha", p.manager.alpha_target,
                  "fixed-utility accuracy target (m)");
  cmd->add_option("--rho", p.manager.rho, "fixed-rate per-step budget");
  cmd->add_option("--eta", p.manager.eta, "test-budget scaling in (0,1]");
  cmd->add_option("--gamma", p.manager.gamma,
                  "test-accuracy/threshold ratio in (0,1]");
  cmd->add_option("--delta", p.manager.delta, "accuracy confidence level");
  cmd->add_option("--pr-init", p.manager.pr_init,
                  "initial prediction-rate estimate");
  cmd->add_option("--pr-window", p.manager.pr_window,
                  "steps before switching to the observed rate");
  const std::map<std::string, geopriv::ManagerMode> modes{
      {"fixed-utility", geopriv::ManagerMode::fixed_utility},
      {"fixed-rate", geopriv::ManagerMode::fixed_rate}};
  cmd->add_option("--mode", p.manager.mode, "budget manager")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  cmd->add_flag("--skip-first,!--no-skip-first", p.manager.skip.first_step,
                "force a hard first step instead of testing");
  cmd->add_flag("--skip-time,!--no-skip-time", p.manager.skip.time_based,
                "force easy steps while the travel bound fits");
  cmd->add_option("--v-max", p.manager.skip.v_max,
                  "walking-speed bound for --skip-time (m/s)");
  cmd->add_option("--seed", p.master_seed, "master RNG seed");
  cmd->add_option("--jobs", p.jobs, "worker threads for evaluate");
  cmd->add_option("--brief-gap", p.sampler.brief_gap_seconds,
                  "mean short inter-query gap (s)");
  cmd->add_option("--jump-gap", p.sampler.jump_gap_seconds,
                  "mean jump inter-query gap (s)");
  cmd->add_option("--noise-frac", p.sampler.noise_frac,
                  "gap noise sigma as a fraction of the gap");
  cmd->add_option("--samples", p.sampler.samples_per_trace,
                  "query traces drawn per trajectory and prior");
  cmd->add_option("--speed-cap", p.sampler.speed_cap,
                  "pedestrian speed cap (m/s)");
  cmd->add_option("--origin-lat", p.sampler.origin.lat,
                  "projection origin latitude");
  cmd->add_option("--origin-lon", p.sampler.origin.lon,
                  "projection origin longitude");
}

}  // namespace

int main(int argc, char** argv) {
  geopriv::ParamSet params;
  // Config files act as defaults, so they are applied before CLI11
  // parses the flags; whatever the user typed wins.
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string_view arg = argv[i];
      if (arg == "--config" && i + 1 < argc) {
        geopriv::apply_config_file(argv[i + 1], params);
      } else if (arg.rfind("--config=", 0) == 0) {
        geopriv::apply_config_file(std::string(arg.substr(9)), params);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  CLI::App app{"dx-private location reporting toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  bool print_config = false;

  geopriv::IngestOptions ingest;
  CLI::App* c_ingest =
      app.add_subcommand("ingest", "parse GPS files into a trajectory store");
  c_ingest->add_option("paths", ingest.paths, "input files or directories")
      ->required();
  c_ingest->add_option("--format", ingest.format, "geolife or tdrive")
      ->required();
  c_ingest->add_option("--out", ingest.out, "trajectory store to write")
      ->required();
  add_param_flags(c_ingest, params, config_path, print_config);

  geopriv::SampleOptions sample;
  CLI::App* c_sample = app.add_subcommand(
      "sample", "draw query traces from a trajectory store");
  c_sample->add_option("--store", sample.store, "trajectory store CSV")
      ->required();
  c_sample->add_option("--p", sample.ps,
                       "jump prior(s); default sweeps 0.0..1.0 by 0.1");
  c_sample->add_option("--out", sample.out, "query store to write")
      ->required();
  add_param_flags(c_sample, params, config_path, print_config);

  geopriv::RunOptions run;
  CLI::App* c_run = app.add_subcommand(
      "run", "run one mechanism over the first trace of a query store");
  c_run->add_option("--trace", run.trace_file, "query store CSV")->required();
  c_run->add_option("--mechanism", run.mechanism, "pm or im");
  c_run->add_option("--out", run.out, "run CSV to write")->required();
  add_param_flags(c_run, params, config_path, print_config);

  geopriv::EvaluateOptions evaluate;
  CLI::App* c_evaluate = app.add_subcommand(
      "evaluate", "run the mechanism comparison over a query store");
  c_evaluate->add_option("--store", evaluate.store, "query store CSV")
      ->required();
  c_evaluate->add_option("--out", evaluate.out, "metrics CSV to write")
      ->required();
  add_param_flags(c_evaluate, params, config_path, print_config);

  geopriv::VerifyOptions verify;
  CLI::App* c_verify =
      app.add_subcommand("verify", "run the invariant suites");
  c_verify->add_option("--suite", verify.suite,
                       "noise, privacy, budget, utility, or all");
  c_verify->add_flag("--inject-overflow", verify.inject_overflow,
                     "corrupt one run to prove the budget check fires");
  add_param_flags(c_verify, params, config_path, print_config);

  CLI11_PARSE(app, argc, argv);

  params.finalize();
  if (print_config) {
    std::cout << geopriv::describe_config(params);
  }
  if (c_ingest->parsed()) {
    return geopriv::cmd_ingest(ingest, std::cout);
  }
  if (c_sample->parsed()) {
    sample.params = params;
    return geopriv::cmd_sample(sample, std::cout);
  }
  if (c_run->parsed()) {
    run.params = params;
    return geopriv::cmd_run(run, std::cout);
  }
  if (c_evaluate->parsed()) {
    evaluate.params = params;
    return geopriv::cmd_evaluate(evaluate, std::cout);
  }
  if (c_verify->parsed()) {
    verify.params = params;
    return geopriv::cmd_verify(verify, std::cout);
  }
  return 0;
}
