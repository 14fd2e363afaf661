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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "geopriv/io.hpp"
#include "geopriv/mechanism.hpp"
#include "geopriv/traces.hpp"

namespace geopriv {
namespace {

ReportedStep make_step(double t, PlanarPoint z, Flag b, double spent_test,
                       double spent_noise, Skip skipped) {
  ReportedStep s;
  s.t = t;
  s.z = z;
  s.b = b;
  s.spent_test = spent_test;
  s.spent_noise = spent_noise;
  s.skipped = skipped;
  return s;
}

TEST_SUITE("io") {

TEST_CASE("run_to_csv prints the frozen row format") {
  Run run;
  run.push(make_step(60.0, {0.5, -2.25}, Flag::easy, 0.5, 0.0, Skip::none));
  run.push(
      make_step(90.0, {1.5, 3.0}, Flag::hard, 0.25, 0.125,
                Skip::forced_hard));
  run.mark_exhausted();
  CHECK(run_to_csv(run, 120.0) ==
        "step_index,t,z_x,z_y,b,spent_test,spent_noise,skipped\n"
        "0,60,0.5,-2.25,0,0.5,0,none\n"
        "1,90,1.5,3,1,0.25,0.125,forced_hard\n"
        "-1,120,0,0,-1,0,0,exhausted\n");
}

TEST_CASE("run_to_csv omits the marker for a completed run") {
  Run run;
  run.push(make_step(0.0, {0.0, 0.0}, Flag::easy, 0.0, 0.0,
                     Skip::forced_easy));
  CHECK(run_to_csv(run) ==
        "step_index,t,z_x,z_y,b,spent_test,spent_noise,skipped\n"
        "0,0,0,0,0,0,0,forced_easy\n");
}

TEST_CASE("trajectories round-trip bit for bit") {
  std::vector<Trajectory> trajs(2);
  trajs[0].user_id = "u1";
  trajs[0].fixes = {{39.9, 116.4, 1224720000.0},
                    {39.9005, 116.4005, 1224720030.0}};
  trajs[1].user_id = "u2";
  trajs[1].fixes = {{39.8999, 116.3999, 0.1}, {39.9, 116.4, 0.2}};
  const std::string csv = trajectories_to_csv(trajs);
  CHECK(csv.rfind("user_id,lat,lon,t\n", 0) == 0);
  const auto back = trajectories_from_csv(csv);
  REQUIRE(back.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back[i].user_id == trajs[i].user_id);
    REQUIRE(back[i].fixes.size() == trajs[i].fixes.size());
    for (std::size_t j = 0; j < back[i].fixes.size(); ++j) {
      CHECK(back[i].fixes[j].lat == trajs[i].fixes[j].lat);
      CHECK(back[i].fixes[j].lon == trajs[i].fixes[j].lon);
      CHECK(back[i].fixes[j].t == trajs[i].fixes[j].t);
    }
  }
}

TEST_CASE("trajectory grouping splits on user change only") {
  const std::string csv =
      "user_id,lat,lon,t\n"
      "u1,1,2,3\n"
      "u2,1,2,4\n"
      "u1,1,2,5\n";
  const auto back = trajectories_from_csv(csv);
  REQUIRE(back.size() == 3);
  CHECK(back[0].user_id == "u1");
  CHECK(back[1].user_id == "u2");
  CHECK(back[2].user_id == "u1");
}

TEST_CASE("queries round-trip bit for bit") {
  std::vector<QueryTrace> traces(2);
  traces[0].user_id = "q1";
  traces[0].prior_p = 0.1;
  traces[0].sample_index = 0;
  traces[0].points = {{{1.5, -2.5}, 0.0}, {{3.125, 4.0}, 62.5}};
  traces[1].user_id = "q1";
  traces[1].prior_p = 0.1;
  traces[1].sample_index = 1;
  traces[1].points = {{{0.30000000000000004, 1e-9}, 10.0},
                      {{-7.25, 8.5}, 70.0}};
  const std::string csv = queries_to_csv(traces);
  CHECK(csv.rfind("user_id,prior_p,sample_index,t,x,y\n", 0) == 0);
  CHECK(csv.find("0.10000000000000001") != std::string::npos);
  const auto back = queries_from_csv(csv);
  REQUIRE(back.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back[i].user_id == traces[i].user_id);
    CHECK(back[i].prior_p == traces[i].prior_p);
    CHECK(back[i].sample_index == traces[i].sample_index);
    REQUIRE(back[i].points.size() == traces[i].points.size());
    for (std::size_t j = 0; j < back[i].points.size(); ++j) {
      CHECK(back[i].points[j].p.x == traces[i].points[j].p.x);
      CHECK(back[i].points[j].p.y == traces[i].points[j].p.y);
      CHECK(back[i].points[j].t == traces[i].points[j].t);
    }
  }
}

TEST_CASE("query grouping splits on any key change") {
  const std::string csv =
      "user_id,prior_p,sample_index,t,x,y\n"
      "q1,0.5,0,0,1,1\n"
      "q1,0.5,0,60,1,1\n"
      "q1,0.5,1,0,1,1\n"
      "q1,0.25,1,0,1,1\n"
      "q2,0.25,1,0,1,1\n";
  const auto back = queries_from_csv(csv);
  REQUIRE(back.size() == 4);
  CHECK(back[0].points.size() == 2);
  CHECK(back[1].sample_index == 1);
  CHECK(back[2].prior_p == 0.25);
  CHECK(back[3].user_id == "q2");
}

TEST_CASE("metrics_to_csv prints the frozen header and row") {
  MetricsRow r;
  r.mechanism = "pm_fixed_rate";
  r.skip_on = true;
  r.prior_p = 0.5;
  r.mean_err = 1234.5;
  r.alpha90 = 2.5;
  r.mean_rate = 0.001;
  r.prediction_rate = 0.975;
  r.skipped_frac = 0.0;
  r.test_budget_frac = 0.25;
  r.queries_covered = 40.0;
  const std::vector<MetricsRow> rows = {r};
  CHECK(metrics_to_csv(rows) ==
        "mechanism,skip,prior_p,mean_err_m,alpha90_m,mean_rate,"
        "prediction_rate,skipped_frac,test_budget_frac,queries_covered\n"
        "pm_fixed_rate,on,0.5,1234.5,2.5,0.001,0.975,0,0.25,40\n");
}

TEST_CASE("store parsers reject broken input") {
  CHECK_THROWS_AS(trajectories_from_csv(""), std::runtime_error);
  CHECK_THROWS_AS(trajectories_from_csv("lat,lon\n"), std::runtime_error);
  CHECK_THROWS_AS(trajectories_from_csv("user_id,lat,lon,t\nu,abc,1,2\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(trajectories_from_csv("user_id,lat,lon,t\nu,1,2\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(queries_from_csv(""), std::runtime_error);
  CHECK_THROWS_AS(
      queries_from_csv("user_id,prior_p,sample_index,t,x,y\nq,0.5,-1,0,1,1\n"),
      std::runtime_error);
  CHECK_THROWS_AS(
      queries_from_csv("user_id,prior_p,sample_index,t,x,y\nq,0.5,0,0,1\n"),
      std::runtime_error);
}

TEST_CASE("store parsers tolerate CRLF and blank lines") {
  const auto back = trajectories_from_csv(
      "user_id,lat,lon,t\r\n\r\nu,1,2,3\r\nu,1,2,4\r\n");
  REQUIRE(back.size() == 1);
  CHECK(back[0].fixes.size() == 2);
}

TEST_CASE("read_file and write_file round-trip") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string path = (dir / "geopriv_io_test.tmp").string();
  const std::string payload = "line1\nline2\r\nbinary:\t\x01\x02\n";
  write_file(path, payload);
  CHECK(read_file(path) == payload);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_file(path), std::runtime_error);
}

}  // TEST_SUITE

}  // namespace
}  // namespace geopriv
