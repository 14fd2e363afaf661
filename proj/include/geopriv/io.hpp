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

#ifndef GEOPRIV_IO_HPP_
#define GEOPRIV_IO_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geopriv/eval.hpp"
#include "geopriv/mechanism.hpp"
#include "geopriv/traces.hpp"

namespace geopriv {

// step_index,t,z_x,z_y,b,spent_test,spent_noise,skipped per reported
// step, chronological. An exhausted run ends with the marker row
// "-1,<t>,0,0,-1,0,0,exhausted" carrying the first uncovered query time.
std::string run_to_csv(const Run& run, double exhausted_at = 0.0);

// user_id,lat,lon,t rows; numbers printed with enough digits to
// round-trip exactly.
std::string trajectories_to_csv(std::span<const Trajectory> trajectories);
std::vector<Trajectory> trajectories_from_csv(std::string_view text);

// user_id,prior_p,sample_index,t,x,y rows, one block per trace;
// round-trips exactly.
std::string queries_to_csv(std::span<const QueryTrace> traces);
std::vector<QueryTrace> queries_from_csv(std::string_view text);

// mechanism,skip,prior_p,mean_err_m,alpha90_m,mean_rate,prediction_rate,
// skipped_frac,test_budget_frac,queries_covered.
std::string metrics_to_csv(std::span<const MetricsRow> rows);

std::string read_file(const std::string& path);   // throws on failure
void write_file(const std::string& path, std::string_view contents);

}  // namespace geopriv

#endif  // GEOPRIV_IO_HPP_
