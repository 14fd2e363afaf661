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

#ifndef GEOPRIV_EVAL_HPP_
#define GEOPRIV_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "geopriv/budget.hpp"
#include "geopriv/mechanism.hpp"
#include "geopriv/traces.hpp"

namespace geopriv {

// One row of the evaluation table. Distances are meters, rates are
// budget per step, fractions are in [0, 1].
struct MetricsRow {
  std::string mechanism;       // im_matched_rate, im_matched_utility,
                               // pm_fixed_utility, pm_fixed_rate
  bool skip_on = false;
  double prior_p = 0.0;
  double mean_err = 0.0;       // mean over traces of per-trace mean error
  double alpha90 = 0.0;        // pooled 90th percentile error
  double mean_rate = 0.0;      // mean over traces of per-run rate
  double prediction_rate = 0.0;  // pooled easy steps / pooled steps
  double skipped_frac = 0.0;     // pooled skipped steps / pooled steps
  double test_budget_frac = 0.0; // pooled test spend / pooled total spend
  double queries_covered = 0.0;  // mean reported steps per trace
};

// Mean reported-vs-secret distance over one run (skipped forced-hard
// steps included; they reported noise like any hard step).
double trace_error(std::span<const PlanarPoint> secret, const Run& run);

// delta-quantile by the order statistic at index ceil(delta*n) (1-based)
// of the sorted pool. Takes the pool by value because it sorts.
double alpha_accuracy(std::vector<double> errors, double delta);

// Total spend divided by reported steps; 0 for an empty run.
double run_rate(const Run& run);

// Analytic check that the easy/hard test's outcome distribution is
// eps_theta-dx-private in the distance-to-prediction. Scans all pairs
// d, d' in [0, grid_extent] at grid_step resolution and returns the
// largest violation |ln P_b(d)/P_b(d')| - eps_theta*|d - d'| over both
// outcomes b; a correct test keeps this at most ~1e-9 (roundoff).
double verify_test_privacy(double eps_theta, double l, double grid_extent,
                           double grid_step);

struct ExperimentConfig {
  ManagerConfig base;       // mode/skips overridden per row
  std::size_t jobs = 1;     // worker threads; results identical for any value
};

// Runs the four predictive rows and the two matched independent
// baselines over every trace, grouped by the traces' prior_p. Rows are
// ordered by (prior_p, fixed mechanism list). Deterministic for a fixed
// master_seed regardless of jobs.
std::vector<MetricsRow> run_experiment(std::span<const QueryTrace> traces,
                                       const ExperimentConfig& cfg,
                                       std::uint64_t master_seed);

// Independent baseline run that stops when the next step would exceed
// eps_total; every step is hard and spends eps_n.
Run independent_run_bounded(std::span<const TimedPoint> xs, double eps_n,
                            double eps_total, Rng& rng);

}  // namespace geopriv

#endif  // GEOPRIV_EVAL_HPP_
