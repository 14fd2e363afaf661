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

#ifndef GEOPRIV_LAPLACE_HPP_
#define GEOPRIV_LAPLACE_HPP_

#include "geopriv/geometry.hpp"
#include "geopriv/rng.hpp"

namespace geopriv {

// Unit-epsilon accuracy constant of the one-dimensional Laplace
// distribution at confidence level delta: ln(1/(1-delta)).
double c_theta(double delta);

// Unit-epsilon accuracy constant of the planar Laplace radius at level
// delta: the root c of (1+c)e^(-c) = 1-delta, found by bisection to
// 1e-10 absolute.
double c_planar(double delta);

// Radius within which a linear Laplace draw at scale 1/eps falls with
// probability delta: c_theta(delta)/eps.
double icll(double eps, double delta);

// Radius within which a planar Laplace draw at scale 1/eps falls with
// probability delta: c_planar(delta)/eps.
double icpl(double eps, double delta);

// The pair (c_theta, c_n) at a given level, computed once and reused by
// the budget managers.
struct AccuracyConstants {
  double delta = 0.0;
  double c_theta = 0.0;
  double c_n = 0.0;

  static AccuracyConstants at(double delta);
};

// Draw from the density (eps/2)exp(-eps|t|).
double linear_laplace_sample(double eps, Rng& rng);

// CDF of the linear Laplace distribution at scale 1/eps.
double linear_laplace_cdf(double eps, double t);

// CDF of the planar Laplace radius: 1 - (1 + eps*r)exp(-eps*r).
double planar_radius_cdf(double eps, double r);

// Inverse of planar_radius_cdf by bisection on [0, 50/eps] to 1e-10
// absolute. The bracket always contains the root: its CDF value exceeds
// the largest double below 1.
double planar_radius_quantile(double eps, double u);

// Polar planar Laplace draw centered at `center`: uniform angle, radius
// from planar_radius_quantile. Consumes exactly two uniforms.
PlanarPoint planar_laplace_sample(double eps, const PlanarPoint& center,
                                  Rng& rng);

}  // namespace geopriv

#endif  // GEOPRIV_LAPLACE_HPP_
