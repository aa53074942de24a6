#include "gps/metrics.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "gps/oracle.hpp"

namespace gps {

namespace {

using Clock = std::chrono::steady_clock;

struct TrialResult {
  double value = 0.0;
  double variance = 0.0;
  bool covers = false;
  double micros_per_edge = 0.0;
};

TrialResult one_trial(const StreamSource& stream, const TrialsOptions& opt,
                      double truth, std::uint64_t seed) {
  Rng rng(seed);
  EstimateReport report;
  const auto start = Clock::now();
  if (opt.mode == Mode::post) {
    Reservoir res(opt.m, Mode::post);
    for (const Edge& e : stream.edges) res.update(e, opt.wf, rng);
    report = estimate(res);
  } else {
    Reservoir res(opt.m, Mode::instream);
    InstreamCounters counters;
    for (const Edge& e : stream.edges) {
      process_edge(res, counters, e, opt.wf, rng);
    }
    report = instream_report(counters);
  }
  const auto stop = Clock::now();

  TrialResult out;
  if (opt.stat == Stat::triangles) {
    out.value = report.n_tri;
    out.variance = report.v_tri;
    out.covers = report.ci95_tri.lo <= truth && truth <= report.ci95_tri.hi;
  } else {
    out.value = report.n_wedge;
    out.variance = report.v_wedge;
    out.covers =
        report.ci95_wedge.lo <= truth && truth <= report.ci95_wedge.hi;
  }
  const double micros =
      std::chrono::duration<double, std::micro>(stop - start).count();
  out.micros_per_edge = micros / static_cast<double>(stream.edges.size());
  return out;
}

}  // namespace

TrialSummary run_trials(const StreamSource& stream, const TrialsOptions& opt) {
  if (opt.trials < 2) throw std::invalid_argument("run_trials: trials >= 2");
  if (stream.edges.empty()) {
    throw std::invalid_argument("run_trials: empty stream");
  }
  const ExactCounts exact = exact_counts(stream.edges);
  const double truth = static_cast<double>(
      opt.stat == Stat::triangles ? exact.triangles : exact.wedges);

  std::vector<TrialResult> results(opt.trials);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      results[i] = one_trial(stream, opt, truth, trial_seed(opt.base_seed, i));
    }
  };
  if (opt.threads <= 1) {
    run_range(0, opt.trials);
  } else {
    std::vector<std::thread> workers;
    const std::size_t chunk = (opt.trials + opt.threads - 1) / opt.threads;
    for (unsigned t = 0; t < opt.threads; ++t) {
      const std::size_t begin = std::min<std::size_t>(t * chunk, opt.trials);
      const std::size_t end = std::min(begin + chunk, opt.trials);
      if (begin < end) workers.emplace_back(run_range, begin, end);
    }
    for (auto& w : workers) w.join();
  }

  TrialSummary s;
  s.trials = opt.trials;
  s.truth = truth;
  double sum = 0.0;
  for (const TrialResult& r : results) sum += r.value;
  s.mean_estimate = sum / static_cast<double>(opt.trials);
  double ss = 0.0, vsum = 0.0, tsum = 0.0;
  std::size_t covered = 0;
  for (const TrialResult& r : results) {
    const double d = r.value - s.mean_estimate;
    ss += d * d;
    vsum += r.variance;
    tsum += r.micros_per_edge;
    covered += r.covers ? 1 : 0;
  }
  s.empirical_variance = ss / static_cast<double>(opt.trials - 1);
  s.mean_variance_estimate = vsum / static_cast<double>(opt.trials);
  s.se_mean = std::sqrt(s.empirical_variance / static_cast<double>(opt.trials));
  double ssv = 0.0;
  for (const TrialResult& r : results) {
    const double d = r.variance - s.mean_variance_estimate;
    ssv += d * d;
  }
  s.se_mean_variance = std::sqrt(ssv / static_cast<double>(opt.trials - 1) /
                                 static_cast<double>(opt.trials));
  if (truth > 0.0) {
    s.are = std::abs(s.mean_estimate - truth) / truth;
  }
  if (s.se_mean > 0.0) {
    s.z_score = (s.mean_estimate - truth) / s.se_mean;
  }
  s.ci_coverage = static_cast<double>(covered) / static_cast<double>(opt.trials);
  s.mean_update_micros = tsum / static_cast<double>(opt.trials);
  return s;
}

TrackingError tracking_error(
    std::span<const std::pair<std::uint64_t, double>> estimates,
    std::span<const std::pair<std::uint64_t, double>> truth) {
  if (estimates.size() != truth.size()) {
    throw std::invalid_argument("tracking_error: series length mismatch");
  }
  TrackingError out;
  double sum = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    if (estimates[i].first != truth[i].first) {
      throw std::invalid_argument("tracking_error: misaligned indices");
    }
    const double x = truth[i].second;
    if (x == 0.0) {
      ++out.points_skipped;
      continue;
    }
    const double are = std::abs(estimates[i].second - x) / x;
    sum += are;
    out.max_are = std::max(out.max_are, are);
    ++out.points_used;
  }
  if (out.points_used == 0) {
    throw std::invalid_argument("tracking_error: no evaluable points");
  }
  out.mare = sum / static_cast<double>(out.points_used);
  return out;
}

TrackPoint make_track_point(std::uint64_t t, const EstimateReport& r,
                            double zstar, std::size_t sample_size) {
  TrackPoint p;
  p.t = t;
  p.n_tri = r.n_tri;
  p.v_tri = r.v_tri;
  p.ci_lo = r.ci95_tri.lo;
  p.ci_hi = r.ci95_tri.hi;
  p.n_wedge = r.n_wedge;
  p.v_wedge = r.v_wedge;
  p.alpha = r.alpha;
  p.zstar = zstar;
  p.sample_size = sample_size;
  return p;
}

std::vector<TrackPoint> run_instream_tracking(const StreamSource& stream,
                                              std::size_t m,
                                              const WeightFunction& wf,
                                              std::uint64_t seed,
                                              std::uint64_t interval,
                                              EstimateReport* final_report) {
  Rng rng(seed);
  Reservoir res(m, Mode::instream);
  InstreamCounters counters;
  std::vector<TrackPoint> points;
  std::uint64_t t = 0;
  for (const Edge& e : stream.edges) {
    process_edge(res, counters, e, wf, rng);
    ++t;
    const bool last = t == stream.edges.size();
    if ((interval > 0 && t % interval == 0) || last) {
      points.push_back(
          make_track_point(t, instream_report(counters), res.zstar(), res.size()));
    }
  }
  if (final_report != nullptr) *final_report = instream_report(counters);
  return points;
}

std::vector<TrackPoint> run_post_tracking(const StreamSource& stream,
                                          std::size_t m,
                                          const WeightFunction& wf,
                                          std::uint64_t seed,
                                          std::uint64_t interval,
                                          EstimateReport* final_report) {
  Rng rng(seed);
  Reservoir res(m, Mode::post);
  std::vector<TrackPoint> points;
  std::uint64_t t = 0;
  EstimateReport report;
  for (const Edge& e : stream.edges) {
    res.update(e, wf, rng);
    ++t;
    const bool last = t == stream.edges.size();
    if ((interval > 0 && t % interval == 0) || last) {
      report = estimate(res);
      points.push_back(make_track_point(t, report, res.zstar(), res.size()));
    }
  }
  if (final_report != nullptr) *final_report = report;
  return points;
}

}  // namespace gps
