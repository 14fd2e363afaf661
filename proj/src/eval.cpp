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

#include "geopriv/eval.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "geopriv/laplace.hpp"

namespace geopriv {

namespace {

struct RowSpec {
  const char* name;
  bool pm;
  ManagerMode mode;
  bool skip_on;
  std::uint64_t tag;  // seed-path tag, stable across row reordering
};

constexpr RowSpec kRows[] = {
    {"im_matched_rate", false, ManagerMode::fixed_rate, false, 0},
    {"im_matched_utility", false, ManagerMode::fixed_utility, false, 1},
    {"pm_fixed_utility", true, ManagerMode::fixed_utility, false, 2},
    {"pm_fixed_utility", true, ManagerMode::fixed_utility, true, 3},
    {"pm_fixed_rate", true, ManagerMode::fixed_rate, false, 4},
    {"pm_fixed_rate", true, ManagerMode::fixed_rate, true, 5},
};
constexpr std::size_t kRowCount = std::size(kRows);

struct TracePartial {
  std::size_t steps = 0;
  std::size_t easy = 0;
  std::size_t skipped = 0;
  long double test_spend = 0.0L;
  long double total_spend_ = 0.0L;
  double mean_err = 0.0;
  double rate = 0.0;
  bool has_run = false;
  std::vector<double> errors;
};

TracePartial eval_one(const RowSpec& row, const QueryTrace& qt,
                      const ExperimentConfig& cfg, std::uint64_t master_seed) {
  Rng rng(derive_seed(master_seed,
                      {row.tag, hash_string(qt.user_id), qt.sample_index,
                       std::bit_cast<std::uint64_t>(qt.prior_p)}));
  Run run;
  if (row.pm) {
    ManagerConfig m = cfg.base;
    m.mode = row.mode;
    m.skip.first_step = row.skip_on;
    m.skip.time_based = row.skip_on;
    BudgetManager manager(m);
    run = predictive_mechanism(qt.points, manager, parrot_predict, rng);
  } else {
    const double eps_n =
        row.mode == ManagerMode::fixed_rate
            ? cfg.base.rho
            : AccuracyConstants::at(cfg.base.delta).c_n / cfg.base.alpha_target;
    run = independent_run_bounded(qt.points, eps_n, cfg.base.eps_total, rng);
  }
  TracePartial part;
  const std::span<const ReportedStep> steps = run.chronological();
  part.steps = steps.size();
  part.errors.reserve(steps.size());
  double err_sum = 0.0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const ReportedStep& s = steps[i];
    if (s.b == Flag::easy) {
      part.easy += 1;
    }
    if (s.skipped != Skip::none) {
      part.skipped += 1;
    }
    part.test_spend += s.spent_test;
    part.total_spend_ += s.spent_test;
    part.total_spend_ += s.spent_noise;
    const double e = euclid(qt.points[i].p, s.z);
    part.errors.push_back(e);
    err_sum += e;
  }
  if (!steps.empty()) {
    part.has_run = true;
    part.mean_err = err_sum / static_cast<double>(steps.size());
    part.rate = run_rate(run);
  }
  return part;
}

}  // namespace

double trace_error(std::span<const PlanarPoint> secret, const Run& run) {
  const std::span<const ReportedStep> steps = run.chronological();
  if (secret.size() != steps.size()) {
    throw std::invalid_argument("trace_error: length mismatch");
  }
  if (steps.empty()) {
    throw std::invalid_argument("trace_error: empty trace");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    sum += euclid(secret[i], steps[i].z);
  }
  return sum / static_cast<double>(steps.size());
}

double alpha_accuracy(std::vector<double> errors, double delta) {
  if (errors.empty()) {
    throw std::invalid_argument("alpha_accuracy: empty input");
  }
  if (!(delta > 0.0) || !(delta <= 1.0)) {
    throw std::invalid_argument("alpha_accuracy: delta must lie in (0, 1]");
  }
  std::sort(errors.begin(), errors.end());
  const double kd = delta * static_cast<double>(errors.size());
  // ceil(kd) with a tolerance so that exact products (0.9 * 10) do not
  // round up an extra rank.
  std::size_t k = static_cast<std::size_t>(std::floor(kd));
  if (kd - std::floor(kd) >= 1e-9) {
    k += 1;
  }
  k = std::clamp<std::size_t>(k, 1, errors.size());
  return errors[k - 1];
}

double run_rate(const Run& run) {
  if (run.empty()) {
    throw std::invalid_argument("run_rate: empty run");
  }
  return total_spend(run) / static_cast<double>(run.size());
}

double verify_test_privacy(double eps_theta, double l, double grid_extent,
                           double grid_step) {
  if (!std::isfinite(l)) {
    throw std::invalid_argument("verify_test_privacy: l must be finite");
  }
  if (!(eps_theta > 0.0) || !(grid_step > 0.0) || !(grid_extent >= 0.0)) {
    throw std::invalid_argument("verify_test_privacy: bad parameters");
  }
  // Log-probabilities of the two outcomes at distance d from the
  // prediction, written so the far tails stay finite.
  const auto log_p_easy = [&](double d) {
    const double t = l - d;
    if (t < 0.0) {
      return std::log(0.5) + eps_theta * t;
    }
    return std::log1p(-0.5 * std::exp(-eps_theta * t));
  };
  const auto log_p_hard = [&](double d) {
    const double t = l - d;
    if (t >= 0.0) {
      return std::log(0.5) - eps_theta * t;
    }
    return std::log1p(-0.5 * std::exp(eps_theta * t));
  };
  const std::size_t m =
      static_cast<std::size_t>(std::floor(grid_extent / grid_step)) + 1;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const double di = static_cast<double>(i) * grid_step;
    for (std::size_t j = i; j < m; ++j) {
      const double dj = static_cast<double>(j) * grid_step;
      const double allowed = eps_theta * (dj - di);
      worst = std::max(
          worst, std::abs(log_p_easy(di) - log_p_easy(dj)) - allowed);
      worst = std::max(
          worst, std::abs(log_p_hard(di) - log_p_hard(dj)) - allowed);
    }
  }
  return worst;
}

Run independent_run_bounded(std::span<const TimedPoint> xs, double eps_n,
                            double eps_total, Rng& rng) {
  if (!(eps_n > 0.0)) {
    throw std::invalid_argument("independent_run_bounded: eps_n must be > 0");
  }
  Run run;
  long double spent = 0.0L;
  for (const TimedPoint& q : xs) {
    long double would = spent;
    would += eps_n;
    if (would > static_cast<long double>(eps_total)) {
      run.mark_exhausted();
      break;
    }
    ReportedStep s;
    s.z = planar_laplace_sample(eps_n, q.p, rng);
    s.b = Flag::hard;
    s.spent_noise = eps_n;
    s.t = q.t;
    run.push(s);
    spent = would;
  }
  return run;
}

std::vector<MetricsRow> run_experiment(std::span<const QueryTrace> traces,
                                       const ExperimentConfig& cfg,
                                       std::uint64_t master_seed) {
  cfg.base.validate();
  const std::size_t n_traces = traces.size();
  const std::size_t n_tasks = n_traces * kRowCount;
  std::vector<TracePartial> partials(n_tasks);
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_tasks) {
        return;
      }
      const std::size_t row = i / n_traces;
      const std::size_t ti = i % n_traces;
      partials[i] = eval_one(kRows[row], traces[ti], cfg, master_seed);
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, cfg.jobs);
  if (jobs == 1 || n_tasks <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (std::size_t j = 0; j < jobs; ++j) {
      pool.emplace_back(worker);
    }
    for (std::thread& th : pool) {
      th.join();
    }
  }

  std::vector<double> ps;
  for (const QueryTrace& qt : traces) {
    ps.push_back(qt.prior_p);
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

  // Aggregation runs on the main thread in a fixed order, so the output
  // is identical no matter how many workers computed the partials.
  std::vector<MetricsRow> out;
  for (const double p : ps) {
    for (std::size_t row = 0; row < kRowCount; ++row) {
      MetricsRow r;
      r.mechanism = kRows[row].name;
      r.skip_on = kRows[row].skip_on;
      r.prior_p = p;
      std::vector<double> pooled;
      double sum_mean_err = 0.0;
      double sum_rate = 0.0;
      double sum_covered = 0.0;
      std::size_t runs = 0;
      std::size_t group = 0;
      std::size_t steps = 0, easy = 0, skipped = 0;
      long double test_spend = 0.0L, total = 0.0L;
      for (std::size_t ti = 0; ti < n_traces; ++ti) {
        if (traces[ti].prior_p != p) {
          continue;
        }
        const TracePartial& part = partials[row * n_traces + ti];
        group += 1;
        sum_covered += static_cast<double>(part.steps);
        steps += part.steps;
        easy += part.easy;
        skipped += part.skipped;
        test_spend += part.test_spend;
        total += part.total_spend_;
        if (part.has_run) {
          runs += 1;
          sum_mean_err += part.mean_err;
          sum_rate += part.rate;
          pooled.insert(pooled.end(), part.errors.begin(),
                        part.errors.end());
        }
      }
      if (runs > 0) {
        r.mean_err = sum_mean_err / static_cast<double>(runs);
        r.mean_rate = sum_rate / static_cast<double>(runs);
        r.alpha90 = alpha_accuracy(std::move(pooled), 0.9);
      }
      if (steps > 0) {
        r.prediction_rate =
            static_cast<double>(easy) / static_cast<double>(steps);
        r.skipped_frac =
            static_cast<double>(skipped) / static_cast<double>(steps);
      }
      if (total > 0.0L) {
        r.test_budget_frac = static_cast<double>(test_spend / total);
      }
      if (group > 0) {
        r.queries_covered = sum_covered / static_cast<double>(group);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace geopriv
