#pragma once

#include "gps/estimate.hpp"
#include "gps/reservoir.hpp"

namespace gps {

// Running in-stream totals. Every increment is non-negative, so all five
// counters are non-decreasing over the stream; evicting an edge discards
// only its per-edge accumulators, never committed counter mass.
struct InstreamCounters {
  double n_tri = 0.0;
  double n_wedge = 0.0;
  double v_tri = 0.0;
  double v_wedge = 0.0;
  double cov_tri_wedge = 0.0;
};

// Snapshot update for arriving edge k against the pre-update reservoir:
// every triangle k completes commits 1/(q1*q2) plus variance/covariance
// terms, every resident edge adjacent to k commits a wedge term. Mutates
// resident accumulators; the reservoir membership is untouched.
void instream_estimate(Reservoir& state, InstreamCounters& counters,
                       const Edge& k);

// One stream step: instream_estimate(k) then the sampling update for k.
// Requires mode == instream and k not resident.
UpdateOutcome process_edge(Reservoir& state, InstreamCounters& counters,
                           const Edge& k, const WeightFunction& wf, Rng& rng);

// Packages the counters (alpha, delta-method variance, 95% bounds).
EstimateReport instream_report(const InstreamCounters& counters);

}  // namespace gps
