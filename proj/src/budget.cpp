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

#include "geopriv/budget.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace geopriv {

namespace {

// Worst-case reserve for the next step: STOP unless both the test and a
// hard outcome still fit. Adds in the same width and order as
// BudgetManager::observe so the bound is exact, not merely approximate.
bool next_step_fits(const ManagerConfig& cfg, const ManagerState& state,
                    double eps_theta, double eps_n) {
  long double would = state.spent_so_far;
  would += eps_theta;
  would += eps_n;
  return would <= static_cast<long double>(cfg.eps_total);
}

void require(bool ok, const char* what) {
  if (!ok) {
    throw std::invalid_argument(what);
  }
}

}  // namespace

void ManagerConfig::validate() const {
  require(eps_total > 0.0 && std::isfinite(eps_total),
          "eps_total must be positive");
  require(alpha_target > 0.0 && std::isfinite(alpha_target),
          "alpha_target must be positive");
  require(rho > 0.0 && rho <= eps_total, "rho must lie in (0, eps_total]");
  require(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
  require(gamma > 0.0 && gamma <= 1.0, "gamma must lie in (0, 1]");
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  require(pr_init >= 0.0 && pr_init < 1.0, "pr_init must lie in [0, 1)");
  require(skip.v_max >= 0.0 && std::isfinite(skip.v_max),
          "v_max must be nonnegative");
}

double current_pr(const ManagerConfig& cfg, const ManagerState& state) {
  if (state.steps_taken < cfg.pr_window || state.steps_taken == 0) {
    return cfg.pr_init;
  }
  return 1.0 - static_cast<double>(state.hard_steps) /
                   static_cast<double>(state.steps_taken);
}

std::optional<BudgetDecision> fixed_utility_decide(const ManagerConfig& cfg,
                                                   const ManagerState& state) {
  const AccuracyConstants acc = AccuracyConstants::at(cfg.delta);
  BudgetDecision d;
  d.eps_theta = cfg.eta * (acc.c_theta / cfg.alpha_target) *
                (1.0 + 1.0 / cfg.gamma);
  d.eps_n = acc.c_n / cfg.alpha_target;
  d.l = acc.c_theta / (cfg.gamma * d.eps_theta);
  if (!next_step_fits(cfg, state, d.eps_theta, d.eps_n)) {
    return std::nullopt;
  }
  return d;
}

std::optional<BudgetDecision> fixed_rate_decide(const ManagerConfig& cfg,
                                                const ManagerState& state) {
  const AccuracyConstants acc = AccuracyConstants::at(cfg.delta);
  const double k =
      cfg.eta * (acc.c_theta / acc.c_n) * (1.0 + 1.0 / cfg.gamma);
  const double pr = current_pr(cfg, state);
  BudgetDecision d;
  d.eps_n = cfg.rho / ((1.0 - pr) + k);
  d.eps_theta = d.eps_n * k;
  d.l = acc.c_theta / (cfg.gamma * d.eps_theta);
  if (!next_step_fits(cfg, state, d.eps_theta, d.eps_n)) {
    return std::nullopt;
  }
  return d;
}

double rate_equation_check(double eps_theta, double eps_n, double pr) {
  return eps_theta + (1.0 - pr) * eps_n;
}

double pr_lower_bound(const ManagerConfig& cfg) {
  const AccuracyConstants acc = AccuracyConstants::at(cfg.delta);
  return cfg.eta * (acc.c_theta / acc.c_n) * (1.0 + 1.0 / cfg.gamma);
}

SkipAction skip_decide(const ManagerConfig& cfg, const ManagerState& state,
                       double query_time, double alpha_now) {
  if (cfg.skip.first_step && state.steps_taken == 0) {
    return SkipAction::forced_hard;
  }
  if (cfg.skip.time_based && state.last_reported_time.has_value()) {
    const double elapsed = query_time - *state.last_reported_time;
    if (elapsed * cfg.skip.v_max <= alpha_now) {
      return SkipAction::forced_easy;
    }
  }
  return SkipAction::run_test;
}

BudgetManager::BudgetManager(const ManagerConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  acc_ = AccuracyConstants::at(cfg_.delta);
}

double BudgetManager::alpha_now(const BudgetDecision& d) const {
  if (cfg_.mode == ManagerMode::fixed_utility) {
    return cfg_.alpha_target;
  }
  return std::max(acc_.c_n / d.eps_n, d.l + acc_.c_theta / d.eps_theta);
}

std::optional<BudgetDecision> BudgetManager::decide(double query_time) const {
  if (state_.exhausted) {
    return std::nullopt;
  }
  const std::optional<BudgetDecision> raw =
      cfg_.mode == ManagerMode::fixed_utility
          ? fixed_utility_decide(cfg_, state_)
          : fixed_rate_decide(cfg_, state_);
  if (!raw) {
    return std::nullopt;
  }
  switch (skip_decide(cfg_, state_, query_time, alpha_now(*raw))) {
    case SkipAction::forced_easy:
      return BudgetDecision{0.0, 0.0,
                            std::numeric_limits<double>::infinity()};
    case SkipAction::forced_hard:
      return BudgetDecision{0.0, raw->eps_n,
                            -std::numeric_limits<double>::infinity()};
    case SkipAction::run_test:
      break;
  }
  return raw;
}

void BudgetManager::observe(const ReportedStep& s) {
  state_.steps_taken += 1;
  if (s.b == Flag::hard) {
    state_.hard_steps += 1;
  }
  state_.last_reported_time = s.t;
  state_.spent_so_far += s.spent_test;
  state_.spent_so_far += s.spent_noise;
}

}  // namespace geopriv
