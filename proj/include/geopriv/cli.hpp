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

#ifndef GEOPRIV_CLI_HPP_
#define GEOPRIV_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "geopriv/budget.hpp"
#include "geopriv/traces.hpp"

namespace geopriv {

// Every tunable shared by the commands. Config files and flags both
// write into this; finalize() derives eps_total from (eps_star, r_star).
struct ParamSet {
  double eps_star = kDefaultEpsilonStar;
  double r_star = kDefaultRStarMeters;
  ManagerConfig manager;
  SamplerConfig sampler;
  std::uint64_t master_seed = 1;
  std::size_t jobs = 1;

  void finalize() { manager.eps_total = eps_star / r_star; }
};

// key=value lines, '#' comments, blank lines ignored; keys are the CLI
// flag names without the leading dashes. Unknown keys are an error.
// Values loaded here act as defaults; flags parsed afterwards win.
void apply_config_file(const std::string& path, ParamSet& params);

std::string describe_config(const ParamSet& params);

// Command implementations return a process exit code and write their
// report to `log`; the binary passes std::cout.

struct IngestOptions {
  std::vector<std::string> paths;  // files or directories
  std::string format;              // "geolife" or "tdrive"
  std::string out;
};
int cmd_ingest(const IngestOptions& opt, std::ostream& log);

struct SampleOptions {
  std::string store;               // trajectory store CSV
  std::vector<double> ps;          // empty = default 0.0..1.0 sweep
  std::string out;
  ParamSet params;
};
int cmd_sample(const SampleOptions& opt, std::ostream& log);

struct RunOptions {
  std::string trace_file;          // query store CSV; first trace is run
  std::string mechanism = "pm";    // "pm" or "im"
  std::string out;
  ParamSet params;                 // im draws at eps_n = rho
};
int cmd_run(const RunOptions& opt, std::ostream& log);

struct EvaluateOptions {
  std::string store;               // query store CSV
  std::string out;
  ParamSet params;
};
int cmd_evaluate(const EvaluateOptions& opt, std::ostream& log);

struct VerifyOptions {
  std::string suite = "all";       // noise | privacy | budget | utility | all
  bool inject_overflow = false;    // corrupt one run to prove the check bites
  ParamSet params;
};
int cmd_verify(const VerifyOptions& opt, std::ostream& log);

}  // namespace geopriv

#endif  // GEOPRIV_CLI_HPP_
