#pragma once

#include <optional>

#include "gps/reservoir.hpp"

namespace gps {

inline constexpr double kNormal95 = 1.96;

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// x +/- 1.96*sqrt(var), lower bound clamped at zero.
ConfidenceInterval ci95(double x, double var);

// Point estimates, variance estimates and 95% bounds for triangle count,
// wedge count and the global clustering coefficient. alpha is absent when
// the sampled graph contains no wedge.
struct EstimateReport {
  double n_tri = 0.0;
  double n_wedge = 0.0;
  double v_tri = 0.0;
  double v_wedge = 0.0;
  double cov_tri_wedge = 0.0;
  std::optional<double> alpha;
  std::optional<double> v_alpha;
  bool v_alpha_clamped = false;
  ConfidenceInterval ci95_tri;
  ConfidenceInterval ci95_wedge;
  std::optional<ConfidenceInterval> ci95_alpha;
};

struct ClusteringVariance {
  double value = 0.0;
  // The delta-method expansion can go negative in finite samples; such
  // values are reported as 0 with this flag set.
  bool clamped = false;
};

// Delta-method variance of alpha = 3 * n_tri / n_wedge. Empty when
// n_wedge == 0.
std::optional<ClusteringVariance> clustering_variance(double n_tri,
                                                      double n_wedge,
                                                      double v_tri,
                                                      double v_wedge,
                                                      double cov_tri_wedge);

// Packages raw totals into a report: alpha, delta-method variance, bounds.
EstimateReport make_report(double n_tri, double n_wedge, double v_tri,
                           double v_wedge, double cov_tri_wedge);

// Post-stream estimation from a reservoir snapshot: unbiased triangle/wedge
// counts, their unbiased variances (per-edge localized covariance terms),
// the triangle-wedge covariance and the clustering coefficient. The per-edge
// loop is partitioned across `threads` with a deterministic reduction.
// Requires mode == post.
EstimateReport estimate(const Reservoir& state, unsigned threads = 1);

// The triangle-wedge covariance term alone. Requires mode == post.
double tri_wedge_covariance(const Reservoir& state);

}  // namespace gps
