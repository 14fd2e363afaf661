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

#ifndef GEOPRIV_MECHANISM_HPP_
#define GEOPRIV_MECHANISM_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "geopriv/geometry.hpp"
#include "geopriv/rng.hpp"

namespace geopriv {

class BudgetManager;

enum class Flag { easy = 0, hard = 1 };

enum class Skip { none, forced_easy, forced_hard };

// One public output record: the reported point, whether the prediction
// was accepted (easy) or fresh noise was drawn (hard), and the budget
// actually consumed by the step.
struct ReportedStep {
  PlanarPoint z;
  Flag b = Flag::hard;
  double spent_test = 0.0;
  double spent_noise = 0.0;
  Skip skipped = Skip::none;
  double t = 0.0;
};

// Per-step policy triple. l = +inf forces an easy step (accept the
// prediction for free), l = -inf forces a hard step; both require
// eps_theta = 0, and a finite l requires eps_theta > 0.
struct BudgetDecision {
  double eps_theta = 0.0;
  double eps_n = 0.0;
  double l = 0.0;

  bool valid() const;
};

// The public output sequence of a mechanism execution. Logically a cons
// list growing at the head (head = most recent step); stored oldest
// first so that chronological traversal and serialization are direct.
class Run {
 public:
  bool empty() const { return chron_.empty(); }
  std::size_t size() const { return chron_.size(); }

  const ReportedStep& head() const { return chron_.back(); }
  void push(const ReportedStep& s) { chron_.push_back(s); }

  std::span<const ReportedStep> chronological() const { return chron_; }

  bool exhausted() const { return exhausted_; }
  void mark_exhausted() { exhausted_ = true; }

 private:
  std::vector<ReportedStep> chron_;
  bool exhausted_ = false;
};

// A prediction is a deterministic function of the public run only; it
// must not look at secrets.
using PredictionFn = std::function<PlanarPoint(const Run&)>;

class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted() : std::runtime_error("budget manager signaled STOP") {}
};

class NoPrediction : public std::runtime_error {
 public:
  NoPrediction() : std::runtime_error("prediction undefined for empty run") {}
};

// Private threshold test: easy iff d(x, z_pred) <= l + Lap(eps_theta).
// The skip conventions l = +/-inf return a constant flag and consume no
// randomness and no budget.
Flag test_mechanism(const BudgetDecision& decision, const PlanarPoint& z_pred,
                    const PlanarPoint& x_secret, Rng& rng);

// Repeats the most recently reported point. Throws NoPrediction on an
// empty run.
PlanarPoint parrot_predict(const Run& run);

// One mechanism step: asks the manager for a decision, runs the test,
// and reports either the prediction or a fresh planar Laplace draw.
// Throws BudgetExhausted when the manager signals STOP. Does not mutate
// the manager; callers record the result via Run::push and
// BudgetManager::observe.
ReportedStep step(const Run& run, const PlanarPoint& x, double t,
                  const BudgetManager& manager, const PredictionFn& predictor,
                  Rng& rng);

// Folds step over a timestamped secret trace. Stops early with the
// partial run marked exhausted when the manager signals STOP.
Run predictive_mechanism(std::span<const TimedPoint> x, BudgetManager& manager,
                         const PredictionFn& predictor, Rng& rng);

// Baseline: independent planar Laplace noise per point, no budget cap.
std::vector<PlanarPoint> independent_mechanism(std::span<const PlanarPoint> x,
                                               double eps_n, Rng& rng);

// Total budget consumed by a run, accumulated chronologically in the
// same order the manager accounts it.
double total_spend(const Run& run);

// Attaches uniformly spaced timestamps to bare points.
std::vector<TimedPoint> with_times(std::span<const PlanarPoint> points,
                                   double t0, double dt);

}  // namespace geopriv

#endif  // GEOPRIV_MECHANISM_HPP_
