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

#include "geopriv/laplace.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geopriv {

namespace {

void require_positive_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("eps must be positive and finite");
  }
}

void require_delta_below_one(double delta) {
  if (!(delta >= 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("delta must lie in [0, 1)");
  }
}

}  // namespace

double c_theta(double delta) {
  require_delta_below_one(delta);
  return -std::log1p(-delta);
}

double c_planar(double delta) {
  require_delta_below_one(delta);
  const double target = 1.0 - delta;
  auto tail = [](double c) { return (1.0 + c) * std::exp(-c); };
  double lo = 0.0;
  double hi = 1.0;
  while (tail(hi) > target) {
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
    const double mid = 0.5 * (lo + hi);
    (tail(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double icll(double eps, double delta) {
  require_positive_eps(eps);
  return c_theta(delta) / eps;
}

double icpl(double eps, double delta) {
  require_positive_eps(eps);
  return c_planar(delta) / eps;
}

AccuracyConstants AccuracyConstants::at(double delta) {
  return {delta, geopriv::c_theta(delta), geopriv::c_planar(delta)};
}

double linear_laplace_sample(double eps, Rng& rng) {
  require_positive_eps(eps);
  const double u = rng.uniform_open();
  if (u < 0.5) {
    return std::log(2.0 * u) / eps;
  }
  return -std::log(2.0 * (1.0 - u)) / eps;
}

double linear_laplace_cdf(double eps, double t) {
  if (t < 0.0) {
    return 0.5 * std::exp(eps * t);
  }
  return 1.0 - 0.5 * std::exp(-eps * t);
}

double planar_radius_cdf(double eps, double r) {
  if (r <= 0.0) {
    return 0.0;
  }
  return 1.0 - (1.0 + eps * r) * std::exp(-eps * r);
}

double planar_radius_quantile(double eps, double u) {
  require_positive_eps(eps);
  if (!(u >= 0.0) || !(u < 1.0)) {
    throw std::invalid_argument("quantile argument must lie in [0, 1)");
  }
  double lo = 0.0;
  double hi = 50.0 / eps;
  for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
    const double mid = 0.5 * (lo + hi);
    (planar_radius_cdf(eps, mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

PlanarPoint planar_laplace_sample(double eps, const PlanarPoint& center,
                                  Rng& rng) {
  require_positive_eps(eps);
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  const double r = planar_radius_quantile(eps, rng.uniform());
  return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

}  // namespace geopriv
