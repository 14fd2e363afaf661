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

#ifndef GEOPRIV_GEOMETRY_HPP_
#define GEOPRIV_GEOMETRY_HPP_

#include <span>

namespace geopriv {

// A location in local planar coordinates, meters east/north of the
// projection origin.
struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

// A raw WGS84 GPS fix. t is seconds since the Unix epoch.
struct GeoFix {
  double lat = 0.0;
  double lon = 0.0;
  double t = 0.0;
};

// A planar point with its query timestamp.
struct TimedPoint {
  PlanarPoint p;
  double t = 0.0;
};

inline constexpr double kEarthRadiusMeters = 6371000.0;

// Equirectangular projection is only accurate near its origin; reject
// fixes farther than this from it.
inline constexpr double kMaxProjectionDeltaDegrees = 5.0;

// Default origin: centroid of the Beijing bounding box, which covers
// both supported GPS corpora.
inline constexpr double kDefaultOriginLat = 39.9;
inline constexpr double kDefaultOriginLon = 116.4;

double euclid(const PlanarPoint& a, const PlanarPoint& b);

// Equirectangular projection of `fix` against `origin`. Throws
// std::invalid_argument on out-of-range coordinates or when the fix is
// farther than kMaxProjectionDeltaDegrees from the origin.
PlanarPoint project(const GeoFix& fix, const GeoFix& origin);

// Maximum pointwise distance between two equal-length traces.
double trace_dinf(std::span<const PlanarPoint> a,
                  std::span<const PlanarPoint> b);

// Mean distance between adjacent points of a trace (needs >= 2 points).
double step_sigma(std::span<const PlanarPoint> x);

}  // namespace geopriv

#endif  // GEOPRIV_GEOMETRY_HPP_
