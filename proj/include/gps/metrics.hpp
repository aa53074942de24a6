#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gps/estimate.hpp"
#include "gps/instream.hpp"
#include "gps/stream.hpp"

namespace gps {

enum class Stat { triangles, wedges };

struct TrialsOptions {
  std::size_t m = 0;
  WeightFunction wf;
  Mode mode = Mode::post;
  std::size_t trials = 0;  // >= 2
  std::uint64_t base_seed = 1;
  Stat stat = Stat::triangles;
  unsigned threads = 1;
};

// Multi-trial summary for one statistic. are and z_score are absent when the
// oracle truth is zero (resp. when the empirical variance is zero).
struct TrialSummary {
  std::size_t trials = 0;
  double truth = 0.0;
  double mean_estimate = 0.0;
  double empirical_variance = 0.0;       // unbiased sample variance
  double mean_variance_estimate = 0.0;   // mean of the per-trial v estimates
  double se_mean = 0.0;                  // sqrt(empirical_variance / trials)
  double se_mean_variance = 0.0;         // standard error of the v-estimate
                                         // sample mean
  std::optional<double> are;             // |mean - truth| / truth
  std::optional<double> z_score;         // (mean - truth) / se_mean
  double ci_coverage = 0.0;              // fraction of trials whose 95% CI
                                         // contains the truth
  double mean_update_micros = 0.0;       // mean estimate+update cost per edge
};

// Stable per-trial seed derivation from a base seed.
inline std::uint64_t trial_seed(std::uint64_t base, std::size_t index) {
  return splitmix64(base + static_cast<std::uint64_t>(index));
}

// Runs `trials` independently seeded executions of the configured pipeline
// and summarizes them against the exact oracle count. Reproducible
// bit-for-bit for a fixed base seed except the timing field.
TrialSummary run_trials(const StreamSource& stream, const TrialsOptions& opt);

struct TrackingError {
  double mare = 0.0;
  double max_are = 0.0;
  std::size_t points_used = 0;
  std::size_t points_skipped = 0;  // truth == 0 at those indices
};

// MARE / max ARE over aligned (t, value) series; points with zero truth are
// skipped and counted. Throws if the indices disagree or nothing is
// evaluable.
TrackingError tracking_error(
    std::span<const std::pair<std::uint64_t, double>> estimates,
    std::span<const std::pair<std::uint64_t, double>> truth);

// One tracking row (the CSV schema of the tracking output).
struct TrackPoint {
  std::uint64_t t = 0;
  double n_tri = 0.0;
  double v_tri = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double n_wedge = 0.0;
  double v_wedge = 0.0;
  std::optional<double> alpha;
  double zstar = 0.0;
  std::size_t sample_size = 0;
};

TrackPoint make_track_point(std::uint64_t t, const EstimateReport& report,
                            double zstar, std::size_t sample_size);

// Streams all edges in in-stream mode, recording a TrackPoint every
// `interval` arrivals (and at the final arrival). Optionally reports the
// final counters/report.
std::vector<TrackPoint> run_instream_tracking(const StreamSource& stream,
                                              std::size_t m,
                                              const WeightFunction& wf,
                                              std::uint64_t seed,
                                              std::uint64_t interval,
                                              EstimateReport* final_report = nullptr);

// Post-stream twin: same sampling trajectory for the same seed, but each
// checkpoint re-estimates from the reservoir as it stands at that arrival.
std::vector<TrackPoint> run_post_tracking(const StreamSource& stream,
                                          std::size_t m,
                                          const WeightFunction& wf,
                                          std::uint64_t seed,
                                          std::uint64_t interval,
                                          EstimateReport* final_report = nullptr);

}  // namespace gps
