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

#ifndef GEOPRIV_TRACES_HPP_
#define GEOPRIV_TRACES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "geopriv/geometry.hpp"
#include "geopriv/rng.hpp"

namespace geopriv {

// Raw GPS trajectory. Parsers guarantee strictly increasing timestamps
// and at least two fixes.
struct Trajectory {
  std::string user_id;
  std::vector<GeoFix> fixes;
};

// One synthetic query stream drawn from a trajectory.
struct QueryTrace {
  std::string user_id;
  std::vector<TimedPoint> points;  // strictly increasing t
  double prior_p = 0.0;            // jump probability used to draw gaps
  std::size_t sample_index = 0;
};

struct ParseReport {
  std::size_t malformed = 0;
  std::size_t duplicates = 0;
  std::size_t reordered = 0;
};

class EmptyTrajectoryError : public std::runtime_error {
 public:
  explicit EmptyTrajectoryError(const std::string& what)
      : std::runtime_error(what) {}
};

// GeoLife PLT: six ignored header lines, then records
// "lat,lon,flag,altitude_feet,days_serial,date,time". Malformed records
// and out-of-range coordinates are dropped and counted; duplicate
// timestamps keep the first fix; non-monotone input is stably sorted.
// Throws EmptyTrajectoryError when fewer than two valid fixes remain.
Trajectory parse_geolife(std::string_view text, std::string user_id,
                         ParseReport* report = nullptr);

// T-Drive: "taxi_id,YYYY-MM-DD HH:MM:SS,lon,lat" records, one taxi per
// file; the taxi id becomes the user id. Cleanup rules as parse_geolife.
Trajectory parse_tdrive(std::string_view text, ParseReport* report = nullptr);

// Half-open index range [first, last) into a trajectory's fixes.
struct IndexRange {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t size() const { return last - first; }
};

inline constexpr double kSpeedCapMps = 15000.0 / 3600.0;  // 15 km/h
inline constexpr double kSegmentGapSeconds = 600.0;

// Maximal contiguous ranges where every consecutive-fix speed is below
// cap and no time gap exceeds kSegmentGapSeconds. Ranges shorter than
// two fixes are discarded.
std::vector<IndexRange> speed_segments(std::span<const GeoFix> fixes,
                                       double cap = kSpeedCapMps);
std::vector<IndexRange> speed_segments(const Trajectory& traj,
                                       double cap = kSpeedCapMps);

struct SamplerConfig {
  double speed_cap = kSpeedCapMps;
  double brief_gap_seconds = 60.0;
  double jump_gap_seconds = 3600.0;
  double noise_frac = 0.1;   // Gaussian sigma as a fraction of the gap
  double p_jump = 0.0;       // probability a gap is a jump
  std::size_t samples_per_trace = 10;
  GeoFix origin{kDefaultOriginLat, kDefaultOriginLon, 0.0};

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct Gap {
  double seconds = 0.0;
  bool jump = false;
};

// Next inter-query gap: a jump with probability p_jump, else brief. The
// base duration gets Gaussian noise of sigma noise_frac * base,
// truncated to +-3 sigma and floored at one second.
Gap draw_gap(const SamplerConfig& cfg, Rng& rng);

// Walks the trajectory's slow segments, emitting at each query time the
// projection of the nearest-in-time fix. The first query sits on the
// first slow fix; when a query time lands outside every slow segment
// the walk advances to the next segment's first fix. Returns an empty
// vector when fewer than two queries fit.
std::vector<TimedPoint> sample_queries(const Trajectory& traj,
                                       std::span<const IndexRange> segments,
                                       const SamplerConfig& cfg, Rng& rng);

// Draws samples_per_trace query traces per trajectory for each jump
// probability in ps, seeding per (user, p, sample) so that any subset
// of the sweep reproduces. Attempts yielding no usable trace (no slow
// segments, out-of-range coordinates, fewer than two queries) are
// counted in *empty_count when non-null.
std::vector<QueryTrace> prior_sweep(std::span<const Trajectory> trajectories,
                                    const SamplerConfig& base,
                                    std::span<const double> ps,
                                    std::uint64_t master_seed,
                                    std::size_t* empty_count = nullptr);

// The sweep of jump probabilities 0.0, 0.1, ..., 1.0.
std::vector<double> default_priors();

enum class SynthKind { static_user, random_walk, uniform_box };

// Synthetic query traces with a known step-length scale, timestamps at
// t = 0, dt, 2*dt, ...:
//   static_user: every point at the origin (param unused);
//   random_walk: Gaussian steps with mean step length param;
//   uniform_box: i.i.d. uniform points in a square of side param.
QueryTrace synth_trace(SynthKind kind, double param, std::size_t n, double dt,
                       Rng& rng);

std::vector<PlanarPoint> strip_times(std::span<const TimedPoint> points);

}  // namespace geopriv

#endif  // GEOPRIV_TRACES_HPP_
