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

#ifndef GEOPRIV_BUDGET_HPP_
#define GEOPRIV_BUDGET_HPP_

#include <cstddef>
#include <optional>

#include "geopriv/laplace.hpp"
#include "geopriv/mechanism.hpp"

namespace geopriv {

// Privacy level: distinguishability eps_star within radius r_star.
inline constexpr double kDefaultEpsilonStar = 2.302585092994045684;  // ln 10
inline constexpr double kDefaultRStarMeters = 100.0;
inline constexpr double kDefaultEpsTotal =
    kDefaultEpsilonStar / kDefaultRStarMeters;

inline constexpr double kDefaultAlphaMeters = 3000.0;
inline constexpr double kDefaultRho = kDefaultEpsTotal / 30.0;
inline constexpr double kDefaultVMaxMps = 0.5 / 3.6;  // 0.5 km/h

enum class ManagerMode { fixed_utility, fixed_rate };

struct SkipSet {
  bool first_step = false;
  bool time_based = false;
  double v_max = kDefaultVMaxMps;
};

struct ManagerConfig {
  double eps_total = kDefaultEpsTotal;
  ManagerMode mode = ManagerMode::fixed_utility;
  double alpha_target = kDefaultAlphaMeters;  // fixed_utility only
  double rho = kDefaultRho;                   // fixed_rate only
  double eta = 0.9;
  double gamma = 0.8;
  double delta = 0.9;
  double pr_init = 0.6;
  std::size_t pr_window = 5;
  SkipSet skip;

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct ManagerState {
  // Accumulated in long double with a fixed add order so that the STOP
  // guard's bound is exact; see BudgetManager::observe.
  long double spent_so_far = 0.0L;
  std::size_t steps_taken = 0;
  std::size_t hard_steps = 0;
  std::optional<double> last_reported_time;
  bool exhausted = false;
};

enum class SkipAction { run_test, forced_easy, forced_hard };

// Prediction-rate estimate the manager plugs into the fixed-rate
// formulas: pr_init until pr_window steps were taken, then the observed
// easy fraction of the whole run.
double current_pr(const ManagerConfig& cfg, const ManagerState& state);

// Fixed-utility policy: constant decision derived from the target
// accuracy alpha. Returns std::nullopt (STOP) when the worst-case spend
// of the next step would push past eps_total.
std::optional<BudgetDecision> fixed_utility_decide(const ManagerConfig& cfg,
                                                   const ManagerState& state);

// Fixed-rate policy: decision derived from the target per-step rate rho
// and the current prediction-rate estimate. STOP guard as above.
std::optional<BudgetDecision> fixed_rate_decide(const ManagerConfig& cfg,
                                                const ManagerState& state);

// Expected per-step spend at prediction rate pr, assuming constant
// parameters and evenly spread hard steps.
double rate_equation_check(double eps_theta, double eps_n, double pr);

// Break-even prediction rate against the independent baseline:
// eta * (c_theta/c_n) * (1 + 1/gamma).
double pr_lower_bound(const ManagerConfig& cfg);

// Decides whether to skip the test this step. forced_easy maps to the
// decision (0, 0, +inf), forced_hard to (0, eps_n, -inf).
SkipAction skip_decide(const ManagerConfig& cfg, const ManagerState& state,
                       double query_time, double alpha_now);

// Stateful wrapper combining the mode policy, the skip strategies, and
// spend accounting. decide() is const; the mechanism loop records each
// completed step through observe() and latches STOP via mark_exhausted().
class BudgetManager {
 public:
  explicit BudgetManager(const ManagerConfig& cfg);

  // std::nullopt means STOP. Monotone: once the exhausted latch is set,
  // every later call returns STOP.
  std::optional<BudgetDecision> decide(double query_time) const;

  void observe(const ReportedStep& s);
  void mark_exhausted() { state_.exhausted = true; }

  const ManagerConfig& config() const { return cfg_; }
  const ManagerState& state() const { return state_; }
  const AccuracyConstants& constants() const { return acc_; }

  // Accuracy the current decision guarantees; the time-based skip
  // compares the travel bound against this.
  double alpha_now(const BudgetDecision& d) const;

 private:
  ManagerConfig cfg_;
  ManagerState state_;
  AccuracyConstants acc_;
};

}  // namespace geopriv

#endif  // GEOPRIV_BUDGET_HPP_
