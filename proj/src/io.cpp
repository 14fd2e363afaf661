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

#include "geopriv/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace geopriv {

namespace {

// %.17g: shortest form guaranteed to round-trip a double exactly.
std::string fmt_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_metric(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

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

double parse_double_or_throw(std::string_view s, const char* what) {
  s = trim(s);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw std::runtime_error(std::string("malformed number in ") + what);
  }
  return v;
}

std::size_t parse_size_or_throw(std::string_view s, const char* what) {
  s = trim(s);
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw std::runtime_error(std::string("malformed count in ") + what);
  }
  return v;
}

template <typename Fn>
void for_each_data_line(std::string_view text, std::string_view header,
                        const char* what, Fn fn) {
  std::size_t start = 0;
  bool saw_header = false;
  while (start <= text.size()) {
    std::size_t pos = text.find('\n', start);
    if (pos == std::string_view::npos) {
      pos = text.size();
    }
    const std::string_view line = trim(text.substr(start, pos - start));
    if (!line.empty()) {
      if (!saw_header) {
        if (line != header) {
          throw std::runtime_error(std::string("missing header in ") + what);
        }
        saw_header = true;
      } else {
        fn(line);
      }
    }
    if (pos == text.size()) {
      break;
    }
    start = pos + 1;
  }
  if (!saw_header) {
    throw std::runtime_error(std::string("empty ") + what);
  }
}

const char* skip_name(Skip s) {
  switch (s) {
    case Skip::none:
      return "none";
    case Skip::forced_easy:
      return "forced_easy";
    case Skip::forced_hard:
      return "forced_hard";
  }
  return "none";
}

}  // namespace

std::string run_to_csv(const Run& run, double exhausted_at) {
  std::ostringstream out;
  out << "step_index,t,z_x,z_y,b,spent_test,spent_noise,skipped\n";
  std::size_t i = 0;
  for (const ReportedStep& s : run.chronological()) {
    out << i << ',' << fmt_exact(s.t) << ',' << fmt_exact(s.z.x) << ','
        << fmt_exact(s.z.y) << ',' << (s.b == Flag::easy ? 0 : 1) << ','
        << fmt_exact(s.spent_test) << ',' << fmt_exact(s.spent_noise) << ','
        << skip_name(s.skipped) << '\n';
    i += 1;
  }
  if (run.exhausted()) {
    out << "-1," << fmt_exact(exhausted_at) << ",0,0,-1,0,0,exhausted\n";
  }
  return out.str();
}

std::string trajectories_to_csv(std::span<const Trajectory> trajectories) {
  std::ostringstream out;
  out << "user_id,lat,lon,t\n";
  for (const Trajectory& traj : trajectories) {
    for (const GeoFix& f : traj.fixes) {
      out << traj.user_id << ',' << fmt_exact(f.lat) << ',' << fmt_exact(f.lon)
          << ',' << fmt_exact(f.t) << '\n';
    }
  }
  return out.str();
}

std::vector<Trajectory> trajectories_from_csv(std::string_view text) {
  std::vector<Trajectory> out;
  for_each_data_line(text, "user_id,lat,lon,t", "trajectory store",
                     [&](std::string_view line) {
    const auto fields = split(line, ',');
    if (fields.size() != 4) {
      throw std::runtime_error("malformed row in trajectory store");
    }
    const std::string user(trim(fields[0]));
    const GeoFix fix{parse_double_or_throw(fields[1], "trajectory store"),
                     parse_double_or_throw(fields[2], "trajectory store"),
                     parse_double_or_throw(fields[3], "trajectory store")};
    if (out.empty() || out.back().user_id != user) {
      out.push_back({user, {}});
    }
    out.back().fixes.push_back(fix);
  });
  return out;
}

std::string queries_to_csv(std::span<const QueryTrace> traces) {
  std::ostringstream out;
  out << "user_id,prior_p,sample_index,t,x,y\n";
  for (const QueryTrace& qt : traces) {
    for (const TimedPoint& q : qt.points) {
      out << qt.user_id << ',' << fmt_exact(qt.prior_p) << ','
          << qt.sample_index << ',' << fmt_exact(q.t) << ','
          << fmt_exact(q.p.x) << ',' << fmt_exact(q.p.y) << '\n';
    }
  }
  return out.str();
}

std::vector<QueryTrace> queries_from_csv(std::string_view text) {
  std::vector<QueryTrace> out;
  for_each_data_line(text, "user_id,prior_p,sample_index,t,x,y",
                     "query store", [&](std::string_view line) {
    const auto fields = split(line, ',');
    if (fields.size() != 6) {
      throw std::runtime_error("malformed row in query store");
    }
    const std::string user(trim(fields[0]));
    const double p = parse_double_or_throw(fields[1], "query store");
    const std::size_t sample = parse_size_or_throw(fields[2], "query store");
    const TimedPoint q{{parse_double_or_throw(fields[4], "query store"),
                        parse_double_or_throw(fields[5], "query store")},
                       parse_double_or_throw(fields[3], "query store")};
    if (out.empty() || out.back().user_id != user ||
        out.back().prior_p != p || out.back().sample_index != sample) {
      out.push_back({user, {}, p, sample});
    }
    out.back().points.push_back(q);
  });
  return out;
}

std::string metrics_to_csv(std::span<const MetricsRow> rows) {
  std::ostringstream out;
  out << "mechanism,skip,prior_p,mean_err_m,alpha90_m,mean_rate,"
         "prediction_rate,skipped_frac,test_budget_frac,queries_covered\n";
  for (const MetricsRow& r : rows) {
    out << r.mechanism << ',' << (r.skip_on ? "on" : "off") << ','
        << fmt_metric(r.prior_p) << ',' << fmt_metric(r.mean_err) << ','
        << fmt_metric(r.alpha90) << ',' << fmt_metric(r.mean_rate) << ','
        << fmt_metric(r.prediction_rate) << ',' << fmt_metric(r.skipped_frac)
        << ',' << fmt_metric(r.test_budget_frac) << ','
        << fmt_metric(r.queries_covered) << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out.write(contents.data(),
            static_cast<std::streamsize>(contents.size()));
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace geopriv
