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

#include "geopriv/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

#include "geopriv/eval.hpp"
#include "geopriv/io.hpp"
#include "geopriv/laplace.hpp"
#include "geopriv/mechanism.hpp"

namespace geopriv {

namespace {

namespace fs = std::filesystem;

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

double to_double(std::string_view v, const std::string& key) {
  const std::string s{trim(v)};
  double out = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("config: bad number for key '" + key + "'");
  }
  return out;
}

std::uint64_t to_u64(std::string_view v, const std::string& key) {
  const std::string s{trim(v)};
  std::uint64_t out = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("config: bad integer for key '" + key + "'");
  }
  return out;
}

bool to_bool(std::string_view v, const std::string& key) {
  const std::string_view s = trim(v);
  if (s == "true" || s == "1" || s == "on" || s == "yes") {
    return true;
  }
  if (s == "false" || s == "0" || s == "off" || s == "no") {
    return false;
  }
  throw std::runtime_error("config: bad boolean for key '" + key + "'");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void apply_config_file(const std::string& path, ParamSet& params) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::runtime_error("config: expected key=value, got '" + raw +
                               "'");
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view val = trim(line.substr(eq + 1));
    if (key == "eps-star") {
      params.eps_star = to_double(val, key);
    } else if (key == "r-star") {
      params.r_star = to_double(val, key);
    } else if (key == "alpha") {
      params.manager.alpha_target = to_double(val, key);
    } else if (key == "rho") {
      params.manager.rho = to_double(val, key);
    } else if (key == "eta") {
      params.manager.eta = to_double(val, key);
    } else if (key == "gamma") {
      params.manager.gamma = to_double(val, key);
    } else if (key == "delta") {
      params.manager.delta = to_double(val, key);
    } else if (key == "pr-init") {
      params.manager.pr_init = to_double(val, key);
    } else if (key == "pr-window") {
      params.manager.pr_window =
          static_cast<std::size_t>(to_u64(val, key));
    } else if (key == "mode") {
      const std::string_view s = trim(val);
      if (s == "fixed-utility") {
        params.manager.mode = ManagerMode::fixed_utility;
      } else if (s == "fixed-rate") {
        params.manager.mode = ManagerMode::fixed_rate;
      } else {
        throw std::runtime_error("config: unknown mode '" + std::string(s) +
                                 "'");
      }
    } else if (key == "skip-first") {
      params.manager.skip.first_step = to_bool(val, key);
    } else if (key == "skip-time") {
      params.manager.skip.time_based = to_bool(val, key);
    } else if (key == "v-max") {
      params.manager.skip.v_max = to_double(val, key);
    } else if (key == "seed") {
      params.master_seed = to_u64(val, key);
    } else if (key == "jobs") {
      params.jobs = static_cast<std::size_t>(to_u64(val, key));
    } else if (key == "brief-gap") {
      params.sampler.brief_gap_seconds = to_double(val, key);
    } else if (key == "jump-gap") {
      params.sampler.jump_gap_seconds = to_double(val, key);
    } else if (key == "noise-frac") {
      params.sampler.noise_frac = to_double(val, key);
    } else if (key == "samples") {
      params.sampler.samples_per_trace =
          static_cast<std::size_t>(to_u64(val, key));
    } else if (key == "speed-cap") {
      params.sampler.speed_cap = to_double(val, key);
    } else if (key == "origin-lat") {
      params.sampler.origin.lat = to_double(val, key);
    } else if (key == "origin-lon") {
      params.sampler.origin.lon = to_double(val, key);
    } else {
      throw std::runtime_error("config: unknown key '" + key + "'");
    }
  }
  params.finalize();
}

std::string describe_config(const ParamSet& params) {
  std::ostringstream out;
  out << "eps-star=" << fmt(params.eps_star) << '\n'
      << "r-star=" << fmt(params.r_star) << '\n'
      << "eps-total=" << fmt(params.manager.eps_total) << '\n'
      << "mode="
      << (params.manager.mode == ManagerMode::fixed_utility ? "fixed-utility"
                                                            : "fixed-rate")
      << '\n'
      << "alpha=" << fmt(params.manager.alpha_target) << '\n'
      << "rho=" << fmt(params.manager.rho) << '\n'
      << "eta=" << fmt(params.manager.eta) << '\n'
      << "gamma=" << fmt(params.manager.gamma) << '\n'
      << "delta=" << fmt(params.manager.delta) << '\n'
      << "pr-init=" << fmt(params.manager.pr_init) << '\n'
      << "pr-window=" << params.manager.pr_window << '\n'
      << "skip-first=" << (params.manager.skip.first_step ? "on" : "off")
      << '\n'
      << "skip-time=" << (params.manager.skip.time_based ? "on" : "off")
      << '\n'
      << "v-max=" << fmt(params.manager.skip.v_max) << '\n'
      << "speed-cap=" << fmt(params.sampler.speed_cap) << '\n'
      << "brief-gap=" << fmt(params.sampler.brief_gap_seconds) << '\n'
      << "jump-gap=" << fmt(params.sampler.jump_gap_seconds) << '\n'
      << "noise-frac=" << fmt(params.sampler.noise_frac) << '\n'
      << "samples=" << params.sampler.samples_per_trace << '\n'
      << "origin-lat=" << fmt(params.sampler.origin.lat) << '\n'
      << "origin-lon=" << fmt(params.sampler.origin.lon) << '\n'
      << "seed=" << params.master_seed << '\n'
      << "jobs=" << params.jobs << '\n';
  return out.str();
}

int cmd_ingest(const IngestOptions& opt, std::ostream& log) {
  try {
    if (opt.format != "geolife" && opt.format != "tdrive") {
      log << "error: unknown format '" << opt.format << "'\n";
      return 2;
    }
    const std::string want_ext = opt.format == "geolife" ? ".plt" : ".txt";
    std::vector<fs::path> files;
    for (const std::string& p : opt.paths) {
      const fs::path path(p);
      if (fs::is_directory(path)) {
        for (const auto& entry : fs::recursive_directory_iterator(path)) {
          if (entry.is_regular_file() &&
              entry.path().extension() == want_ext) {
            files.push_back(entry.path());
          }
        }
      } else if (fs::is_regular_file(path)) {
        files.push_back(path);
      } else {
        log << "error: no such file or directory: " << p << '\n';
        return 1;
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      log << "error: no input files\n";
      return 1;
    }
    std::vector<Trajectory> trajectories;
    ParseReport totals;
    std::size_t skipped_files = 0;
    std::size_t fixes = 0;
    for (const fs::path& file : files) {
      const std::string text = read_file(file.string());
      ParseReport rep;
      try {
        Trajectory traj =
            opt.format == "geolife"
                ? parse_geolife(text, file.stem().string(), &rep)
                : parse_tdrive(text, &rep);
        fixes += traj.fixes.size();
        trajectories.push_back(std::move(traj));
      } catch (const EmptyTrajectoryError& e) {
        log << "warning: skipping " << file.string() << ": " << e.what()
            << '\n';
        skipped_files += 1;
      }
      totals.malformed += rep.malformed;
      totals.duplicates += rep.duplicates;
      totals.reordered += rep.reordered;
    }
    write_file(opt.out, trajectories_to_csv(trajectories));
    log << "files=" << files.size() << " trajectories="
        << trajectories.size() << " fixes=" << fixes
        << " malformed=" << totals.malformed
        << " duplicates=" << totals.duplicates
        << " reordered=" << totals.reordered
        << " skipped_files=" << skipped_files << '\n';
    return 0;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_sample(const SampleOptions& opt, std::ostream& log) {
  try {
    const std::vector<Trajectory> trajectories =
        trajectories_from_csv(read_file(opt.store));
    const std::vector<double> ps =
        opt.ps.empty() ? default_priors() : opt.ps;
    std::size_t empties = 0;
    const std::vector<QueryTrace> traces = prior_sweep(
        trajectories, opt.params.sampler, ps, opt.params.master_seed,
        &empties);
    std::size_t queries = 0;
    for (const QueryTrace& qt : traces) {
      queries += qt.points.size();
    }
    write_file(opt.out, queries_to_csv(traces));
    log << "trajectories=" << trajectories.size() << " priors=" << ps.size()
        << " traces=" << traces.size() << " queries=" << queries
        << " empty=" << empties << '\n';
    return 0;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_run(const RunOptions& opt, std::ostream& log) {
  try {
    const std::vector<QueryTrace> traces =
        queries_from_csv(read_file(opt.trace_file));
    if (traces.empty()) {
      log << "error: query store holds no traces\n";
      return 1;
    }
    const QueryTrace& qt = traces.front();
    Rng rng(derive_seed(opt.params.master_seed, {hash_string(qt.user_id)}));
    Run run;
    if (opt.mechanism == "pm") {
      BudgetManager manager(opt.params.manager);
      run = predictive_mechanism(qt.points, manager, parrot_predict, rng);
    } else if (opt.mechanism == "im") {
      run = independent_run_bounded(qt.points, opt.params.manager.rho,
                                    opt.params.manager.eps_total, rng);
    } else {
      log << "error: unknown mechanism '" << opt.mechanism << "'\n";
      return 2;
    }
    double exhausted_at = 0.0;
    if (run.exhausted() && run.size() < qt.points.size()) {
      exhausted_at = qt.points[run.size()].t;
    }
    write_file(opt.out, run_to_csv(run, exhausted_at));
    log << "trace=" << qt.user_id << " steps=" << run.size() << "/"
        << qt.points.size() << " spend=" << fmt(total_spend(run))
        << " exhausted=" << (run.exhausted() ? "yes" : "no") << '\n';
    return 0;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_evaluate(const EvaluateOptions& opt, std::ostream& log) {
  try {
    const std::vector<QueryTrace> traces =
        queries_from_csv(read_file(opt.store));
    ExperimentConfig cfg;
    cfg.base = opt.params.manager;
    cfg.jobs = opt.params.jobs;
    const std::vector<MetricsRow> rows =
        run_experiment(traces, cfg, opt.params.master_seed);
    write_file(opt.out, metrics_to_csv(rows));
    log << "traces=" << traces.size() << " rows=" << rows.size() << '\n';
    return 0;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
}

namespace {

class Checker {
 public:
  explicit Checker(std::ostream& log) : log_(log) {}

  void operator()(const char* name, bool ok, const std::string& detail) {
    log_ << (ok ? "[pass] " : "[FAIL] ") << name;
    if (!detail.empty()) {
      log_ << ": " << detail;
    }
    log_ << '\n';
    if (!ok) {
      failures_ += 1;
    }
  }

  int failures() const { return failures_; }

 private:
  std::ostream& log_;
  int failures_ = 0;
};

void verify_noise(Checker& check, std::uint64_t seed) {
  constexpr std::size_t n = 100000;
  const double eps = kDefaultEpsTotal;
  Rng rng(derive_seed(seed, {1}));
  std::vector<double> radii;
  radii.reserve(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const PlanarPoint z = planar_laplace_sample(eps, {0.0, 0.0}, rng);
    const double r = euclid({0.0, 0.0}, z);
    radii.push_back(r);
    mean += r;
  }
  mean /= static_cast<double>(n);
  std::sort(radii.begin(), radii.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = planar_radius_cdf(eps, radii[i]);
    ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - f));
  }
  check("noise: radius KS < 0.01", ks < 0.01, "ks=" + fmt(ks));
  const double target = 2.0 / eps;
  check("noise: mean radius within 1% of 2/eps",
        std::abs(mean - target) <= 0.01 * target,
        "mean=" + fmt(mean) + " target=" + fmt(target));

  Rng rng2(derive_seed(seed, {2}));
  std::size_t inside = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(linear_laplace_sample(1.0, rng2)) <= std::log(10.0)) {
      inside += 1;
    }
  }
  const double frac = static_cast<double>(inside) / n;
  check("noise: linear |T| <= ln10 hits 0.9 +- 0.01",
        std::abs(frac - 0.9) <= 0.01, "frac=" + fmt(frac));

  Rng rng3(derive_seed(seed, {3}));
  constexpr int bins = 36;
  std::vector<std::size_t> counts(bins, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const PlanarPoint z = planar_laplace_sample(1.0, {0.0, 0.0}, rng3);
    double a = std::atan2(z.y, z.x);
    if (a < 0.0) {
      a += 2.0 * std::numbers::pi;
    }
    int b = static_cast<int>(a / (2.0 * std::numbers::pi) * bins);
    b = std::clamp(b, 0, bins - 1);
    counts[static_cast<std::size_t>(b)] += 1;
  }
  const double expect = static_cast<double>(n) / bins;
  double chi2 = 0.0;
  for (const std::size_t c : counts) {
    const double d = static_cast<double>(c) - expect;
    chi2 += d * d / expect;
  }
  // Upper 0.001 quantile of chi-square with 35 degrees of freedom.
  check("noise: angle chi-square (35 dof) < 66.62", chi2 < 66.62,
        "chi2=" + fmt(chi2));
}

void verify_privacy(Checker& check) {
  const double v1 = verify_test_privacy(1.0, 1852.0, 5000.0, 10.0);
  check("privacy: test ratio bound (eps_theta=1)", v1 <= 1e-9,
        "max_violation=" + fmt(v1));
  const double v2 = verify_test_privacy(2.0, 1852.0, 5000.0, 10.0);
  check("privacy: test ratio bound (eps_theta=2)", v2 <= 1e-9,
        "max_violation=" + fmt(v2));
  const double v3 = verify_test_privacy(5.7549417176554135e-4,
                                        5001.3214858675584, 20000.0, 50.0);
  check("privacy: test ratio bound (production scale)", v3 <= 1e-9,
        "max_violation=" + fmt(v3));
}

void verify_budget(Checker& check, std::uint64_t seed, bool inject_overflow) {
  ManagerConfig base;
  bool all_bounded = true;
  bool monotone = true;
  std::string detail;
  Run sample_run;
  for (const ManagerMode mode :
       {ManagerMode::fixed_utility, ManagerMode::fixed_rate}) {
    for (const bool skip_on : {false, true}) {
      for (std::size_t rep = 0; rep < 25; ++rep) {
        Rng traces_rng(derive_seed(
            seed, {10, static_cast<std::uint64_t>(mode),
                   static_cast<std::uint64_t>(skip_on), rep}));
        const QueryTrace qt =
            synth_trace(SynthKind::random_walk, 50.0, 120, 60.0, traces_rng);
        ManagerConfig cfg = base;
        cfg.mode = mode;
        cfg.skip.first_step = skip_on;
        cfg.skip.time_based = skip_on;
        BudgetManager manager(cfg);
        Rng rng(derive_seed(seed, {11, static_cast<std::uint64_t>(mode),
                                   static_cast<std::uint64_t>(skip_on), rep}));
        Run run = predictive_mechanism(qt.points, manager, parrot_predict,
                                       rng);
        if (total_spend(run) > cfg.eps_total) {
          all_bounded = false;
          detail = "spend=" + fmt(total_spend(run)) +
                   " eps=" + fmt(cfg.eps_total);
        }
        if (run.exhausted() && manager.decide(1e12).has_value()) {
          monotone = false;
        }
        if (rep == 0 && mode == ManagerMode::fixed_utility && !skip_on) {
          sample_run = run;
        }
      }
    }
  }
  if (inject_overflow && !sample_run.empty()) {
    // Deliberately corrupt one recorded spend so the bound check fires;
    // proves the ledger is not vacuous.
    ReportedStep bad = sample_run.head();
    bad.spent_noise += base.eps_total;
    sample_run.push(bad);
    const bool within = total_spend(sample_run) <= base.eps_total;
    check("budget: spend <= eps_total (injected overflow)", within,
          "spend=" + fmt(total_spend(sample_run)) +
              " eps=" + fmt(base.eps_total));
  }
  check("budget: spend <= eps_total on all runs", all_bounded, detail);
  check("budget: STOP is monotone", monotone, "");

  ManagerConfig rate_cfg = base;
  rate_cfg.mode = ManagerMode::fixed_rate;
  bool rate_ok = true;
  std::string rate_detail;
  for (std::size_t hard = 0; hard <= 10; ++hard) {
    ManagerState st;
    st.steps_taken = 10;
    st.hard_steps = hard;
    const auto d = fixed_rate_decide(rate_cfg, st);
    if (!d) {
      continue;
    }
    const double pr = current_pr(rate_cfg, st);
    const double got = rate_equation_check(d->eps_theta, d->eps_n, pr);
    if (std::abs(got - rate_cfg.rho) > 1e-12 * rate_cfg.rho) {
      rate_ok = false;
      rate_detail = "pr=" + fmt(pr) + " rate=" + fmt(got);
    }
  }
  check("budget: fixed-rate spend identity", rate_ok, rate_detail);
}

void verify_utility(Checker& check, std::uint64_t seed) {
  ManagerConfig cfg;
  cfg.eps_total = 1000.0;  // never exhausts; this suite probes accuracy
  cfg.mode = ManagerMode::fixed_utility;
  BudgetManager manager(cfg);
  const auto d = fixed_utility_decide(cfg, ManagerState{});
  if (!d) {
    check("utility: adversarial-prediction quantile bound", false,
          "manager refused to decide");
    return;
  }
  const double alpha_n = icpl(d->eps_n, cfg.delta);
  const double bound = std::max(alpha_n, d->l + icll(d->eps_theta, cfg.delta));
  const PlanarPoint far_point{10.0 * alpha_n, 0.0};
  const PredictionFn adversarial = [far_point](const Run&) {
    return far_point;
  };
  constexpr std::size_t n = 10000;
  std::vector<PlanarPoint> secret(n, PlanarPoint{0.0, 0.0});
  const std::vector<TimedPoint> timed = with_times(secret, 0.0, 60.0);
  Rng rng(derive_seed(seed, {20}));
  const Run run = predictive_mechanism(timed, manager, adversarial, rng);
  std::size_t within = 0;
  for (std::size_t i = 0; i < run.size(); ++i) {
    if (euclid(secret[i], run.chronological()[i].z) <= bound) {
      within += 1;
    }
  }
  const double coverage = static_cast<double>(within) /
                          static_cast<double>(run.size());
  check("utility: adversarial-prediction quantile bound",
        run.size() == n && coverage >= cfg.delta - 0.01,
        "coverage=" + fmt(coverage) + " bound=" + fmt(bound));

  constexpr std::size_t m = 100000;
  const double eps_n = kDefaultEpsTotal / 30.0;
  Rng rng2(derive_seed(seed, {21}));
  std::vector<double> errors;
  errors.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const PlanarPoint z = planar_laplace_sample(eps_n, {0.0, 0.0}, rng2);
    errors.push_back(euclid({0.0, 0.0}, z));
  }
  const double q = alpha_accuracy(std::move(errors), 0.9);
  const double want = icpl(eps_n, 0.9);
  check("utility: baseline 90th percentile matches icpl",
        std::abs(q - want) <= 0.02 * want,
        "q=" + fmt(q) + " icpl=" + fmt(want));
}

}  // namespace

int cmd_verify(const VerifyOptions& opt, std::ostream& log) {
  try {
    const bool all = opt.suite == "all";
    const bool noise = all || opt.suite == "noise";
    const bool privacy = all || opt.suite == "privacy";
    const bool budget = all || opt.suite == "budget";
    const bool utility = all || opt.suite == "utility";
    if (!noise && !privacy && !budget && !utility) {
      log << "error: unknown suite '" << opt.suite << "'\n";
      return 2;
    }
    Checker check(log);
    if (noise) {
      verify_noise(check, opt.params.master_seed);
    }
    if (privacy) {
      verify_privacy(check);
    }
    if (budget) {
      verify_budget(check, opt.params.master_seed, opt.inject_overflow);
    }
    if (utility) {
      verify_utility(check, opt.params.master_seed);
    }
    if (check.failures() == 0) {
      log << "all checks passed\n";
      return 0;
    }
    log << check.failures() << " check(s) failed\n";
    return 1;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace geopriv
