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

#include <unistd.h>

#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "geopriv/cli.hpp"
#include "geopriv/io.hpp"
#include "geopriv/rng.hpp"
#include "geopriv/traces.hpp"

namespace geopriv {
namespace {

namespace fs = std::filesystem;

// Per-case scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = fs::temp_directory_path() /
            ("geopriv_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

std::string fixture_dir() { return GEOPRIV_FIXTURE_DIR; }

Trajectory long_slow_trajectory(std::string user_id) {
  Trajectory traj;
  traj.user_id = std::move(user_id);
  for (std::size_t i = 0; i < 2000; ++i) {
    traj.fixes.push_back({39.9 + 1e-6 * static_cast<double>(i), 116.4,
                          30.0 * static_cast<double>(i)});
  }
  return traj;
}

std::string static_query_store(std::size_t n_traces) {
  std::vector<QueryTrace> traces;
  for (std::size_t i = 0; i < n_traces; ++i) {
    Rng rng(1);
    QueryTrace qt = synth_trace(SynthKind::static_user, 0.0, 40, 60.0, rng);
    qt.user_id = (i % 2 == 0) ? "a" : "b";
    qt.prior_p = (i < n_traces / 2) ? 0.0 : 0.5;
    qt.sample_index = i;
    traces.push_back(std::move(qt));
  }
  return queries_to_csv(traces);
}

TEST_SUITE("cli") {

TEST_CASE("apply_config_file sets every key") {
  TempDir dir("config");
  const std::string path = dir.file("params.cfg");
  write_file(path,
             "# full sweep of supported keys\n"
             "eps-star = 4.605170185988092\n"
             "r-star = 100\n"
             "\n"
             "alpha=2500\n"
             "rho=0.0005\n"
             "eta=0.5\n"
             "gamma=0.7\n"
             "delta=0.95\n"
             "pr-init=0.4\n"
             "pr-window=9\n"
             "mode=fixed-rate\n"
             "skip-first=on\n"
             "skip-time=false\n"
             "v-max=0.2\n"
             "seed=42\n"
             "jobs=3\n"
             "brief-gap=90\n"
             "jump-gap=7200\n"
             "noise-frac=0.2\n"
             "samples=4\n"
             "speed-cap=5\n"
             "origin-lat=39.5\n"
             "origin-lon=116.5\n");
  ParamSet p;
  apply_config_file(path, p);
  CHECK(p.eps_star == 4.605170185988092);
  CHECK(p.r_star == 100.0);
  CHECK(p.manager.eps_total ==
        doctest::Approx(0.04605170185988092).epsilon(1e-15));
  CHECK(p.manager.alpha_target == 2500.0);
  CHECK(p.manager.rho == 0.0005);
  CHECK(p.manager.eta == 0.5);
  CHECK(p.manager.gamma == 0.7);
  CHECK(p.manager.delta == 0.95);
  CHECK(p.manager.pr_init == 0.4);
  CHECK(p.manager.pr_window == 9);
  CHECK(p.manager.mode == ManagerMode::fixed_rate);
  CHECK(p.manager.skip.first_step);
  CHECK_FALSE(p.manager.skip.time_based);
  CHECK(p.manager.skip.v_max == 0.2);
  CHECK(p.master_seed == 42);
  CHECK(p.jobs == 3);
  CHECK(p.sampler.brief_gap_seconds == 90.0);
  CHECK(p.sampler.jump_gap_seconds == 7200.0);
  CHECK(p.sampler.noise_frac == 0.2);
  CHECK(p.sampler.samples_per_trace == 4);
  CHECK(p.sampler.speed_cap == 5.0);
  CHECK(p.sampler.origin.lat == 39.5);
  CHECK(p.sampler.origin.lon == 116.5);
}

TEST_CASE("apply_config_file rejects unknown keys and bad values") {
  TempDir dir("badconfig");
  const std::string path = dir.file("bad.cfg");
  write_file(path, "nonsense=1\n");
  ParamSet p;
  CHECK_THROWS_AS(apply_config_file(path, p), std::runtime_error);
  write_file(path, "alpha=abc\n");
  CHECK_THROWS_AS(apply_config_file(path, p), std::runtime_error);
  write_file(path, "mode=sometimes\n");
  CHECK_THROWS_AS(apply_config_file(path, p), std::runtime_error);
  write_file(path, "skip-first=maybe\n");
  CHECK_THROWS_AS(apply_config_file(path, p), std::runtime_error);
  write_file(path, "no equals sign\n");
  CHECK_THROWS_AS(apply_config_file(path, p), std::runtime_error);
  CHECK_THROWS_AS(apply_config_file(dir.file("missing.cfg"), p),
                  std::runtime_error);
}

TEST_CASE("describe_config names every tunable") {
  const ParamSet p;
  const std::string text = describe_config(p);
  for (const char* key :
       {"eps-star=", "r-star=", "eps-total=", "mode=fixed-utility",
        "alpha=3000", "rho=", "eta=", "gamma=", "delta=", "pr-init=",
        "pr-window=5", "skip-first=off", "skip-time=off", "v-max=",
        "speed-cap=", "brief-gap=60", "jump-gap=3600", "noise-frac=",
        "samples=10", "origin-lat=", "origin-lon=", "seed=1", "jobs=1"}) {
    CAPTURE(key);
    CHECK(text.find(key) != std::string::npos);
  }
}

TEST_CASE("cmd_ingest sweeps a geolife directory") {
  TempDir dir("ingest");
  IngestOptions opt;
  opt.paths = {fixture_dir()};
  opt.format = "geolife";
  opt.out = dir.file("store.csv");
  std::ostringstream log;
  REQUIRE(cmd_ingest(opt, log) == 0);
  CHECK(log.str().find("files=3 trajectories=3 fixes=210 malformed=3 "
                       "duplicates=0 reordered=0 skipped_files=0") !=
        std::string::npos);
  const auto back = trajectories_from_csv(read_file(opt.out));
  REQUIRE(back.size() == 3);
  // Files are visited in sorted order; ids come from the file stems.
  CHECK(back[0].user_id == "dirty");
  CHECK(back[1].user_id == "slow_fast_slow");
  CHECK(back[2].user_id == "walk");
}

TEST_CASE("cmd_ingest reads a tdrive file") {
  TempDir dir("tdrive");
  IngestOptions opt;
  opt.paths = {fixture_dir() + "/taxi.txt"};
  opt.format = "tdrive";
  opt.out = dir.file("store.csv");
  std::ostringstream log;
  REQUIRE(cmd_ingest(opt, log) == 0);
  CHECK(log.str().find("files=1 trajectories=1 fixes=60") !=
        std::string::npos);
  const auto back = trajectories_from_csv(read_file(opt.out));
  REQUIRE(back.size() == 1);
  CHECK(back[0].user_id == "42");
}

TEST_CASE("cmd_ingest skips files with too few fixes") {
  TempDir dir("skipfile");
  write_file(dir.file("empty.plt"), "h1\nh2\nh3\nh4\nh5\nh6\n");
  write_file(dir.file("good.plt"),
             read_file(fixture_dir() + "/walk.plt"));
  IngestOptions opt;
  opt.paths = {dir.file("")};
  opt.format = "geolife";
  opt.out = dir.file("store.csv");
  std::ostringstream log;
  REQUIRE(cmd_ingest(opt, log) == 0);
  CHECK(log.str().find("warning: skipping") != std::string::npos);
  CHECK(log.str().find("trajectories=1") != std::string::npos);
  CHECK(log.str().find("skipped_files=1") != std::string::npos);
}

TEST_CASE("cmd_ingest error paths") {
  TempDir dir("ingesterr");
  IngestOptions opt;
  opt.paths = {fixture_dir()};
  opt.format = "gpx";
  opt.out = dir.file("store.csv");
  std::ostringstream log;
  CHECK(cmd_ingest(opt, log) == 2);
  CHECK(log.str().find("unknown format") != std::string::npos);

  opt.format = "tdrive";
  TempDir empty("emptydir");
  opt.paths = {empty.file("")};
  std::ostringstream log2;
  CHECK(cmd_ingest(opt, log2) == 1);
  CHECK(log2.str().find("no input files") != std::string::npos);

  opt.paths = {dir.file("does_not_exist")};
  std::ostringstream log3;
  CHECK(cmd_ingest(opt, log3) == 1);
}

TEST_CASE("cmd_sample draws traces from a store") {
  TempDir dir("sample");
  const std::vector<Trajectory> trajs = {long_slow_trajectory("u1")};
  write_file(dir.file("store.csv"), trajectories_to_csv(trajs));
  SampleOptions opt;
  opt.store = dir.file("store.csv");
  opt.ps = {0.0};
  opt.out = dir.file("queries.csv");
  std::ostringstream log;
  REQUIRE(cmd_sample(opt, log) == 0);
  CHECK(log.str().find("trajectories=1 priors=1 traces=10") !=
        std::string::npos);
  CHECK(log.str().find("empty=0") != std::string::npos);
  const auto back = queries_from_csv(read_file(opt.out));
  CHECK(back.size() == 10);
  SampleOptions missing = opt;
  missing.store = dir.file("absent.csv");
  std::ostringstream log2;
  CHECK(cmd_sample(missing, log2) == 1);
}

TEST_CASE("cmd_run reports a predictive trace") {
  TempDir dir("runpm");
  write_file(dir.file("queries.csv"), static_query_store(1));
  RunOptions opt;
  opt.trace_file = dir.file("queries.csv");
  opt.mechanism = "pm";
  opt.out = dir.file("run.csv");
  std::ostringstream log;
  REQUIRE(cmd_run(opt, log) == 0);
  CHECK(log.str().find("trace=a steps=") != std::string::npos);
  const std::string out = read_file(opt.out);
  CHECK(out.rfind("step_index,t,z_x,z_y,b,spent_test,spent_noise,skipped",
                  0) == 0);
  // The first step has no prediction and falls back to a forced report.
  CHECK(out.find("forced_hard") != std::string::npos);
}

TEST_CASE("cmd_run matches the independent baseline budget") {
  TempDir dir("runim");
  write_file(dir.file("queries.csv"), static_query_store(1));
  RunOptions opt;
  opt.trace_file = dir.file("queries.csv");
  opt.mechanism = "im";
  opt.out = dir.file("run.csv");
  std::ostringstream log;
  REQUIRE(cmd_run(opt, log) == 0);
  CHECK(log.str().find("steps=30/40") != std::string::npos);
  CHECK(log.str().find("exhausted=yes") != std::string::npos);
  const std::string out = read_file(opt.out);
  CHECK(out.find("exhausted") != std::string::npos);
  // Every reported step spends exactly rho on noise.
  std::istringstream lines(out);
  std::string line;
  std::getline(lines, line);  // header
  std::size_t rows = 0;
  while (std::getline(lines, line) && line.rfind("-1,", 0) != 0) {
    const std::size_t last_comma = line.rfind(',');
    const std::size_t prev_comma = line.rfind(',', last_comma - 1);
    const std::string spent_noise =
        line.substr(prev_comma + 1, last_comma - prev_comma - 1);
    CHECK(std::stod(spent_noise) == kDefaultRho);
    rows += 1;
  }
  CHECK(rows == 30);
}

TEST_CASE("cmd_run error paths") {
  TempDir dir("runerr");
  write_file(dir.file("queries.csv"), static_query_store(1));
  RunOptions opt;
  opt.trace_file = dir.file("queries.csv");
  opt.mechanism = "teleport";
  opt.out = dir.file("run.csv");
  std::ostringstream log;
  CHECK(cmd_run(opt, log) == 2);
  opt.mechanism = "pm";
  opt.trace_file = dir.file("absent.csv");
  std::ostringstream log2;
  CHECK(cmd_run(opt, log2) == 1);
  write_file(dir.file("headeronly.csv"), "user_id,prior_p,sample_index,t,x,y\n");
  opt.trace_file = dir.file("headeronly.csv");
  std::ostringstream log3;
  CHECK(cmd_run(opt, log3) == 1);
  CHECK(log3.str().find("no traces") != std::string::npos);
}

TEST_CASE("cmd_evaluate writes six rows per prior") {
  TempDir dir("eval");
  write_file(dir.file("queries.csv"), static_query_store(4));
  EvaluateOptions opt;
  opt.store = dir.file("queries.csv");
  opt.out = dir.file("metrics.csv");
  std::ostringstream log;
  REQUIRE(cmd_evaluate(opt, log) == 0);
  CHECK(log.str().find("traces=4 rows=12") != std::string::npos);
  const std::string out = read_file(opt.out);
  CHECK(out.rfind("mechanism,skip,prior_p,", 0) == 0);
  CHECK(out.find("im_matched_rate") != std::string::npos);
  CHECK(out.find("pm_fixed_rate") != std::string::npos);
  EvaluateOptions missing = opt;
  missing.store = dir.file("absent.csv");
  std::ostringstream log2;
  CHECK(cmd_evaluate(missing, log2) == 1);
}

TEST_CASE("cmd_verify runs the privacy suite") {
  VerifyOptions opt;
  opt.suite = "privacy";
  std::ostringstream log;
  CHECK(cmd_verify(opt, log) == 0);
  CHECK(log.str().find("[pass] privacy: test ratio bound (eps_theta=1)") !=
        std::string::npos);
  CHECK(log.str().find("all checks passed") != std::string::npos);
}

TEST_CASE("cmd_verify rejects unknown suites") {
  VerifyOptions opt;
  opt.suite = "vibes";
  std::ostringstream log;
  CHECK(cmd_verify(opt, log) == 2);
  CHECK(log.str().find("unknown suite") != std::string::npos);
}

}  // TEST_SUITE

}  // namespace
}  // namespace geopriv
