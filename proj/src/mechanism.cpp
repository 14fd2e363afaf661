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

#include "geopriv/mechanism.hpp"

#include <cmath>
#include <optional>

#include "geopriv/budget.hpp"
#include "geopriv/laplace.hpp"

namespace geopriv {

bool BudgetDecision::valid() const {
  if (eps_theta < 0.0 || eps_n < 0.0) {
    return false;
  }
  if (std::isinf(l)) {
    // Skip conventions: the test is free, and a forced-easy step must
    // not carry noise budget it will never spend.
    return eps_theta == 0.0 && (l < 0.0 ? eps_n > 0.0 : eps_n == 0.0);
  }
  return std::isfinite(l) && l >= 0.0 && eps_theta > 0.0 && eps_n > 0.0;
}

Flag test_mechanism(const BudgetDecision& decision, const PlanarPoint& z_pred,
                    const PlanarPoint& x_secret, Rng& rng) {
  if (!decision.valid()) {
    throw std::invalid_argument("test_mechanism: invalid decision");
  }
  if (std::isinf(decision.l)) {
    return decision.l > 0.0 ? Flag::easy : Flag::hard;
  }
  const double d = euclid(x_secret, z_pred);
  const double noise = linear_laplace_sample(decision.eps_theta, rng);
  return d <= decision.l + noise ? Flag::easy : Flag::hard;
}

PlanarPoint parrot_predict(const Run& run) {
  if (run.empty()) {
    throw NoPrediction();
  }
  return run.head().z;
}

ReportedStep step(const Run& run, const PlanarPoint& x, double t,
                  const BudgetManager& manager, const PredictionFn& predictor,
                  Rng& rng) {
  const std::optional<BudgetDecision> decision = manager.decide(t);
  if (!decision) {
    throw BudgetExhausted();
  }
  ReportedStep out;
  out.t = t;
  if (std::isinf(decision->l)) {
    if (decision->l > 0.0) {
      out.z = predictor(run);
      out.b = Flag::easy;
      out.skipped = Skip::forced_easy;
    } else {
      out.z = planar_laplace_sample(decision->eps_n, x, rng);
      out.b = Flag::hard;
      out.spent_noise = decision->eps_n;
      out.skipped = Skip::forced_hard;
    }
    return out;
  }
  PlanarPoint z_pred;
  bool have_prediction = true;
  try {
    z_pred = predictor(run);
  } catch (const NoPrediction&) {
    have_prediction = false;
  }
  if (!have_prediction) {
    // Nothing to test against: degrade to a forced-hard step, spending
    // only the noise budget of the decision we were given.
    out.z = planar_laplace_sample(decision->eps_n, x, rng);
    out.b = Flag::hard;
    out.spent_noise = decision->eps_n;
    out.skipped = Skip::forced_hard;
    return out;
  }
  out.b = test_mechanism(*decision, z_pred, x, rng);
  out.spent_test = decision->eps_theta;
  if (out.b == Flag::easy) {
    out.z = z_pred;
  } else {
    out.z = planar_laplace_sample(decision->eps_n, x, rng);
    out.spent_noise = decision->eps_n;
  }
  return out;
}

Run predictive_mechanism(std::span<const TimedPoint> x, BudgetManager& manager,
                         const PredictionFn& predictor, Rng& rng) {
  Run run;
  for (const TimedPoint& q : x) {
    ReportedStep s;
    try {
      s = step(run, q.p, q.t, manager, predictor, rng);
    } catch (const BudgetExhausted&) {
      manager.mark_exhausted();
      run.mark_exhausted();
      break;
    }
    run.push(s);
    manager.observe(s);
  }
  return run;
}

std::vector<PlanarPoint> independent_mechanism(std::span<const PlanarPoint> x,
                                               double eps_n, Rng& rng) {
  std::vector<PlanarPoint> out;
  out.reserve(x.size());
  for (const PlanarPoint& p : x) {
    out.push_back(planar_laplace_sample(eps_n, p, rng));
  }
  return out;
}

double total_spend(const Run& run) {
  // Same accumulator width and add order as BudgetManager::observe, so
  // the harness-level bound check sees exactly what the manager saw.
  long double acc = 0.0L;
  for (const ReportedStep& s : run.chronological()) {
    acc += s.spent_test;
    acc += s.spent_noise;
  }
  return static_cast<double>(acc);
}

std::vector<TimedPoint> with_times(std::span<const PlanarPoint> points,
                                   double t0, double dt) {
  std::vector<TimedPoint> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.push_back({points[i], t0 + static_cast<double>(i) * dt});
  }
  return out;
}

}  // namespace geopriv
