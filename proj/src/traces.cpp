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

#include "geopriv/traces.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>

namespace geopriv {

namespace {

// Days between 1899-12-30 (the PLT serial-date epoch) and 1970-01-01.
constexpr double kSerialDaysAtUnixEpoch = 25569.0;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, out);
  return res.ec == std::errc() && res.ptr == end && std::isfinite(out);
}

bool parse_int(std::string_view s, int& out) {
  s = trim(s);
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, out);
  return res.ec == std::errc() && res.ptr == end;
}

std::vector<std::string_view> split(std::string_view s, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Calls fn(line) for every line, tolerating \r\n and a missing final
// newline.
template <typename Fn>
void for_each_line(std::string_view text, Fn fn) {
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find('\n', start);
    if (pos == std::string_view::npos) {
      pos = text.size();
    }
    fn(trim(text.substr(start, pos - start)));
    if (pos == text.size()) {
      break;
    }
    start = pos + 1;
  }
}

bool coords_ok(double lat, double lon) {
  return lat >= -90.0 && lat <= 90.0 && lon >= -180.0 && lon <= 180.0;
}

long long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy =
      static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097LL + static_cast<long long>(doe) - 719468LL;
}

bool parse_datetime(std::string_view s, double& out) {
  // "YYYY-MM-DD HH:MM:SS"
  s = trim(s);
  const std::size_t space = s.find(' ');
  if (space == std::string_view::npos) {
    return false;
  }
  const auto date = split(s.substr(0, space), '-');
  const auto time = split(s.substr(space + 1), ':');
  if (date.size() != 3 || time.size() != 3) {
    return false;
  }
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  if (!parse_int(date[0], y) || !parse_int(date[1], mo) ||
      !parse_int(date[2], d) || !parse_int(time[0], h) ||
      !parse_int(time[1], mi) || !parse_int(time[2], sec)) {
    return false;
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 ||
      mi > 59 || sec < 0 || sec > 60) {
    return false;
  }
  out = static_cast<double>(days_from_civil(y, mo, d)) * 86400.0 +
        h * 3600.0 + mi * 60.0 + sec;
  return true;
}

// Sorts, deduplicates, and enforces the two-fix minimum shared by both
// parsers.
Trajectory finalize(std::string user_id, std::vector<GeoFix> fixes,
                    ParseReport& rep) {
  for (std::size_t i = 1; i < fixes.size(); ++i) {
    if (fixes[i].t < fixes[i - 1].t) {
      rep.reordered += 1;
    }
  }
  std::stable_sort(fixes.begin(), fixes.end(),
                   [](const GeoFix& a, const GeoFix& b) { return a.t < b.t; });
  std::vector<GeoFix> unique;
  unique.reserve(fixes.size());
  for (const GeoFix& f : fixes) {
    if (!unique.empty() && f.t == unique.back().t) {
      rep.duplicates += 1;
      continue;
    }
    unique.push_back(f);
  }
  if (unique.size() < 2) {
    throw EmptyTrajectoryError("trajectory '" + user_id +
                               "' has fewer than two valid fixes");
  }
  return {std::move(user_id), std::move(unique)};
}

std::size_t nearest_fix(const std::vector<GeoFix>& fixes, double t) {
  const auto it = std::lower_bound(
      fixes.begin(), fixes.end(), t,
      [](const GeoFix& f, double v) { return f.t < v; });
  if (it == fixes.begin()) {
    return 0;
  }
  if (it == fixes.end()) {
    return fixes.size() - 1;
  }
  const std::size_t hi = static_cast<std::size_t>(it - fixes.begin());
  return (t - fixes[hi - 1].t <= fixes[hi].t - t) ? hi - 1 : hi;
}

bool in_any_segment(std::span<const IndexRange> segments, std::size_t idx) {
  for (const IndexRange& r : segments) {
    if (idx >= r.first && idx < r.last) {
      return true;
    }
  }
  return false;
}

}  // namespace

Trajectory parse_geolife(std::string_view text, std::string user_id,
                         ParseReport* report) {
  ParseReport rep;
  std::vector<GeoFix> fixes;
  std::size_t line_no = 0;
  for_each_line(text, [&](std::string_view line) {
    line_no += 1;
    if (line_no <= 6 || line.empty()) {
      return;
    }
    const auto fields = split(line, ',');
    double lat = 0.0, lon = 0.0, days = 0.0;
    if (fields.size() < 7 || !parse_double(fields[0], lat) ||
        !parse_double(fields[1], lon) || !parse_double(fields[4], days) ||
        !coords_ok(lat, lon)) {
      rep.malformed += 1;
      return;
    }
    fixes.push_back({lat, lon, (days - kSerialDaysAtUnixEpoch) * 86400.0});
  });
  Trajectory traj = finalize(std::move(user_id), std::move(fixes), rep);
  if (report != nullptr) {
    *report = rep;
  }
  return traj;
}

Trajectory parse_tdrive(std::string_view text, ParseReport* report) {
  ParseReport rep;
  std::vector<GeoFix> fixes;
  std::string user_id;
  for_each_line(text, [&](std::string_view line) {
    if (line.empty()) {
      return;
    }
    const auto fields = split(line, ',');
    double lon = 0.0, lat = 0.0, t = 0.0;
    if (fields.size() != 4 || !parse_datetime(fields[1], t) ||
        !parse_double(fields[2], lon) || !parse_double(fields[3], lat) ||
        !coords_ok(lat, lon)) {
      rep.malformed += 1;
      return;
    }
    if (user_id.empty()) {
      user_id = std::string(trim(fields[0]));
    }
    fixes.push_back({lat, lon, t});
  });
  Trajectory traj = finalize(std::move(user_id), std::move(fixes), rep);
  if (report != nullptr) {
    *report = rep;
  }
  return traj;
}

std::vector<IndexRange> speed_segments(std::span<const GeoFix> fixes,
                                       double cap) {
  std::vector<IndexRange> out;
  if (fixes.size() < 2) {
    return out;
  }
  std::size_t start = 0;
  for (std::size_t i = 1; i < fixes.size(); ++i) {
    const GeoFix& a = fixes[i - 1];
    const GeoFix& b = fixes[i];
    const double dt = b.t - a.t;
    bool stay = dt > 0.0 && dt <= kSegmentGapSeconds &&
                std::abs(b.lat - a.lat) < kMaxProjectionDeltaDegrees &&
                std::abs(b.lon - a.lon) < kMaxProjectionDeltaDegrees;
    if (stay) {
      // Distance from a local projection around the earlier fix; exact
      // enough at consecutive-fix scales.
      const PlanarPoint d = project(b, a);
      stay = euclid({0.0, 0.0}, d) / dt < cap;
    }
    if (!stay) {
      if (i - start >= 2) {
        out.push_back({start, i});
      }
      start = i;
    }
  }
  if (fixes.size() - start >= 2) {
    out.push_back({start, fixes.size()});
  }
  return out;
}

std::vector<IndexRange> speed_segments(const Trajectory& traj, double cap) {
  return speed_segments(std::span<const GeoFix>(traj.fixes), cap);
}

void SamplerConfig::validate() const {
  if (!(speed_cap > 0.0)) {
    throw std::invalid_argument("speed_cap must be positive");
  }
  if (!(brief_gap_seconds > 0.0) ||
      !(brief_gap_seconds < jump_gap_seconds)) {
    throw std::invalid_argument("need 0 < brief gap < jump gap");
  }
  if (!(noise_frac >= 0.0)) {
    throw std::invalid_argument("noise_frac must be nonnegative");
  }
  if (!(p_jump >= 0.0) || !(p_jump <= 1.0)) {
    throw std::invalid_argument("p_jump must lie in [0, 1]");
  }
  if (samples_per_trace == 0) {
    throw std::invalid_argument("samples_per_trace must be positive");
  }
}

Gap draw_gap(const SamplerConfig& cfg, Rng& rng) {
  Gap g;
  g.jump = rng.uniform() < cfg.p_jump;
  const double base = g.jump ? cfg.jump_gap_seconds : cfg.brief_gap_seconds;
  const double sigma = cfg.noise_frac * base;
  const double z = std::clamp(rng.gaussian(), -3.0, 3.0);
  g.seconds = std::max(1.0, base + sigma * z);
  return g;
}

std::vector<TimedPoint> sample_queries(const Trajectory& traj,
                                       std::span<const IndexRange> segments,
                                       const SamplerConfig& cfg, Rng& rng) {
  cfg.validate();
  std::vector<TimedPoint> out;
  if (segments.empty()) {
    return out;
  }
  const std::vector<GeoFix>& fixes = traj.fixes;
  const double end_time = fixes[segments.back().last - 1].t;
  double t = fixes[segments.front().first].t;
  out.push_back({project(fixes[segments.front().first], cfg.origin), t});
  while (true) {
    t += draw_gap(cfg, rng).seconds;
    if (t > end_time) {
      break;
    }
    const std::size_t idx = nearest_fix(fixes, t);
    if (in_any_segment(segments, idx)) {
      out.push_back({project(fixes[idx], cfg.origin), t});
      continue;
    }
    // The user is moving fast here; resume at the next slow segment.
    const IndexRange* next = nullptr;
    for (const IndexRange& r : segments) {
      if (fixes[r.first].t >= t) {
        next = &r;
        break;
      }
    }
    if (next == nullptr) {
      break;
    }
    t = fixes[next->first].t;
    out.push_back({project(fixes[next->first], cfg.origin), t});
  }
  if (out.size() < 2) {
    out.clear();
  }
  return out;
}

std::vector<QueryTrace> prior_sweep(std::span<const Trajectory> trajectories,
                                    const SamplerConfig& base,
                                    std::span<const double> ps,
                                    std::uint64_t master_seed,
                                    std::size_t* empty_count) {
  base.validate();
  std::vector<QueryTrace> out;
  std::size_t empties = 0;
  for (const Trajectory& traj : trajectories) {
    const std::vector<IndexRange> segments =
        speed_segments(traj, base.speed_cap);
    const std::uint64_t user_tag = hash_string(traj.user_id);
    for (const double p : ps) {
      SamplerConfig cfg = base;
      cfg.p_jump = p;
      for (std::size_t s = 0; s < base.samples_per_trace; ++s) {
        Rng rng(derive_seed(master_seed,
                            {user_tag, std::bit_cast<std::uint64_t>(p), s}));
        std::vector<TimedPoint> points;
        if (!segments.empty()) {
          try {
            points = sample_queries(traj, segments, cfg, rng);
          } catch (const std::invalid_argument&) {
            points.clear();
          }
        }
        if (points.size() < 2) {
          empties += 1;
          continue;
        }
        out.push_back({traj.user_id, std::move(points), p, s});
      }
    }
  }
  if (empty_count != nullptr) {
    *empty_count = empties;
  }
  return out;
}

std::vector<double> default_priors() {
  std::vector<double> ps;
  ps.reserve(11);
  for (int i = 0; i <= 10; ++i) {
    ps.push_back(static_cast<double>(i) / 10.0);
  }
  return ps;
}

QueryTrace synth_trace(SynthKind kind, double param, std::size_t n, double dt,
                       Rng& rng) {
  if (n == 0) {
    throw std::invalid_argument("synth_trace: need at least one point");
  }
  if (param < 0.0 || dt <= 0.0) {
    throw std::invalid_argument("synth_trace: bad parameter");
  }
  QueryTrace qt;
  qt.points.reserve(n);
  switch (kind) {
    case SynthKind::static_user: {
      qt.user_id = "synth_static";
      for (std::size_t i = 0; i < n; ++i) {
        qt.points.push_back({{0.0, 0.0}, static_cast<double>(i) * dt});
      }
      break;
    }
    case SynthKind::random_walk: {
      qt.user_id = "synth_walk";
      // Per-component sigma chosen so the mean step length is param.
      const double sigma_c = param * std::sqrt(2.0 / std::numbers::pi);
      PlanarPoint cur{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i) {
        qt.points.push_back({cur, static_cast<double>(i) * dt});
        cur.x += sigma_c * rng.gaussian();
        cur.y += sigma_c * rng.gaussian();
      }
      break;
    }
    case SynthKind::uniform_box: {
      qt.user_id = "synth_uniform";
      for (std::size_t i = 0; i < n; ++i) {
        qt.points.push_back({{param * rng.uniform(), param * rng.uniform()},
                             static_cast<double>(i) * dt});
      }
      break;
    }
  }
  return qt;
}

std::vector<PlanarPoint> strip_times(std::span<const TimedPoint> points) {
  std::vector<PlanarPoint> out;
  out.reserve(points.size());
  for (const TimedPoint& p : points) {
    out.push_back(p.p);
  }
  return out;
}

}  // namespace geopriv
