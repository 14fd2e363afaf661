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

#include "geopriv/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geopriv {

namespace {

constexpr double kRadPerDeg = std::numbers::pi / 180.0;

bool coords_in_range(const GeoFix& f) {
  return f.lat >= -90.0 && f.lat <= 90.0 && f.lon >= -180.0 &&
         f.lon <= 180.0 && std::isfinite(f.t);
}

}  // namespace

double euclid(const PlanarPoint& a, const PlanarPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

PlanarPoint project(const GeoFix& fix, const GeoFix& origin) {
  if (!coords_in_range(fix) || !coords_in_range(origin)) {
    throw std::invalid_argument("project: coordinates out of range");
  }
  if (std::abs(fix.lat - origin.lat) >= kMaxProjectionDeltaDegrees ||
      std::abs(fix.lon - origin.lon) >= kMaxProjectionDeltaDegrees) {
    throw std::invalid_argument("project: fix too far from origin");
  }
  const double x = kEarthRadiusMeters * (fix.lon - origin.lon) * kRadPerDeg *
                   std::cos(origin.lat * kRadPerDeg);
  const double y = kEarthRadiusMeters * (fix.lat - origin.lat) * kRadPerDeg;
  return {x, y};
}

double trace_dinf(std::span<const PlanarPoint> a,
                  std::span<const PlanarPoint> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("trace_dinf: length mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, euclid(a[i], b[i]));
  }
  return worst;
}

double step_sigma(std::span<const PlanarPoint> x) {
  if (x.size() < 2) {
    throw std::invalid_argument("step_sigma: need at least two points");
  }
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    sum += euclid(x[i - 1], x[i]);
  }
  return sum / static_cast<double>(x.size() - 1);
}

}  // namespace geopriv
