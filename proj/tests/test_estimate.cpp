#include "doctest.h"

#include <cmath>
#include <vector>

#include "brute_force.hpp"
#include "gps/estimate.hpp"
#include "gps/generators.hpp"
#include "gps/oracle.hpp"
#include "gps/stream.hpp"

using namespace gps;

namespace {

Reservoir fill(const StreamSource& s, std::size_t m, const WeightFunction& wf,
               std::uint64_t seed, Mode mode = Mode::post) {
  Reservoir res(m, mode);
  Rng rng(seed);
  for (const Edge& e : s.edges) res.update(e, wf, rng);
  return res;
}

}  // namespace

TEST_CASE("full capture of K4 is exact with zero variance") {
  Reservoir res = fill(complete_graph(4), 100, WeightFunction::triangle(), 1);
  EstimateReport r = estimate(res);
  CHECK(r.n_tri == doctest::Approx(4.0));
  CHECK(r.n_wedge == doctest::Approx(12.0));
  CHECK(r.v_tri == doctest::Approx(0.0));
  CHECK(r.v_wedge == doctest::Approx(0.0));
  CHECK(r.cov_tri_wedge == doctest::Approx(0.0));
  CHECK(*r.alpha == doctest::Approx(1.0));
  CHECK(*r.v_alpha == doctest::Approx(0.0));
  CHECK(r.ci95_tri.lo == doctest::Approx(4.0));
  CHECK(r.ci95_tri.hi == doctest::Approx(4.0));
}

TEST_CASE("single resident edge yields empty structure") {
  Reservoir res = fill(path_graph(2), 8, WeightFunction::triangle(), 2);
  EstimateReport r = estimate(res);
  CHECK(r.n_tri == 0.0);
  CHECK(r.n_wedge == 0.0);
  CHECK(!r.alpha.has_value());
  CHECK(!r.ci95_alpha.has_value());
}

TEST_CASE("estimate refuses instream-mode state") {
  Reservoir res = fill(complete_graph(4), 100, WeightFunction::triangle(), 3,
                       Mode::instream);
  CHECK_THROWS_AS(estimate(res), std::invalid_argument);
  CHECK_THROWS_AS(tri_wedge_covariance(res), std::invalid_argument);
}

TEST_CASE("clustering variance formula and edge cases") {
  auto zero = clustering_variance(4, 12, 0, 0, 0);
  REQUIRE(zero.has_value());
  CHECK(zero->value == doctest::Approx(0.0));
  CHECK(!zero->clamped);

  // 9 * v_tri / n_wedge^2 = 9/144
  auto direct = clustering_variance(4, 12, 1, 0, 0);
  CHECK(direct->value == doctest::Approx(0.0625));

  CHECK(!clustering_variance(4, 0, 1, 1, 0).has_value());

  // large covariance forces the expansion negative -> clamped to zero
  auto clamped = clustering_variance(10, 10, 0.1, 0.1, 50);
  REQUIRE(clamped.has_value());
  CHECK(clamped->value == 0.0);
  CHECK(clamped->clamped);
}

TEST_CASE("exactness at full capture on random graphs") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    StreamSource g = permute_stream(erdos_renyi(18, 0.4, seed), seed);
    Reservoir res = fill(g, 512, WeightFunction::triangle(), seed * 13);
    ExactCounts exact = exact_counts(g.edges);
    EstimateReport r = estimate(res);
    CHECK(r.n_tri == doctest::Approx(exact.triangles).epsilon(1e-12));
    CHECK(r.n_wedge == doctest::Approx(exact.wedges).epsilon(1e-12));
    CHECK(r.v_tri == doctest::Approx(0.0));
    CHECK(r.v_wedge == doctest::Approx(0.0));
  }
}

TEST_CASE("localized accumulation equals pairwise double sums") {
  // Sampled reservoirs with a live threshold: every per-edge covariance
  // localization must match the explicit sum over subgraph pairs.
  int with_threshold = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Rng pick(splitmix64(seed * 3));
    const std::size_t n = 10 + pick.below(8);
    const double p = 0.35 + 0.3 * pick.uniform01();
    StreamSource g = permute_stream(erdos_renyi(n, p, seed * 17), seed);
    const std::size_t m = 12 + pick.below(28);
    Reservoir res = fill(g, m, WeightFunction::triangle(), seed * 29);
    REQUIRE(res.size() <= 50);
    if (res.zstar() > 0.0) ++with_threshold;

    testing::BruteForce bf(res);
    auto totals = bf.totals();
    EstimateReport r = estimate(res);
    const double tol = 1e-9;
    CHECK(r.n_tri == doctest::Approx(totals.n_tri).epsilon(tol));
    CHECK(r.n_wedge == doctest::Approx(totals.n_wedge).epsilon(tol));
    CHECK(r.v_tri == doctest::Approx(totals.v_tri).epsilon(tol));
    CHECK(r.v_wedge == doctest::Approx(totals.v_wedge).epsilon(tol));
    CHECK(r.cov_tri_wedge ==
          doctest::Approx(totals.cov_tri_wedge).epsilon(tol));
    CHECK(tri_wedge_covariance(res) ==
          doctest::Approx(totals.cov_tri_wedge).epsilon(tol));
  }
  CHECK(with_threshold >= 20);  // the regime of interest actually occurred
}

TEST_CASE("zero covariance cases") {
  // No sampled triangle: wedge-only structure.
  Reservoir res = fill(star_graph(6), 100, WeightFunction::triangle(), 5);
  CHECK(tri_wedge_covariance(res) == 0.0);

  // zstar == 0: every HT factor is 1, all covariance terms vanish.
  Reservoir full = fill(complete_graph(5), 100, WeightFunction::triangle(), 6);
  CHECK(full.zstar() == 0.0);
  CHECK(tri_wedge_covariance(full) == 0.0);
}

TEST_CASE("per-edge covariance contributions are non-negative") {
  for (std::uint64_t seed = 50; seed < 60; ++seed) {
    StreamSource g = permute_stream(erdos_renyi(16, 0.5, seed), seed);
    Reservoir res = fill(g, 18, WeightFunction::triangle(), seed);
    EstimateReport r = estimate(res);
    CHECK(r.v_tri >= 0.0);
    CHECK(r.v_wedge >= 0.0);
    CHECK(r.cov_tri_wedge >= 0.0);
    // variance totals dominate the no-covariance diagonal? not necessarily;
    // but the brute-force pair terms are all >= 0:
    testing::BruteForce bf(res);
    for (const auto& tri : bf.triangles()) {
      CHECK(bf.s_hat(tri) * (bf.s_hat(tri) - 1.0) >= 0.0);
    }
  }
}

TEST_CASE("triangle and wedge counts are unbiased under sampling") {
  StreamSource g = permute_stream(erdos_renyi(30, 0.3, 404), 7);
  ExactCounts exact = exact_counts(g.edges);
  REQUIRE(exact.triangles > 20);

  const int trials = 2000;
  const std::size_t m = 40;
  double sum_tri = 0.0, sum_wedge = 0.0;
  double ss_tri = 0.0, ss_wedge = 0.0;
  std::vector<double> tri(trials), wedge(trials);
  for (int i = 0; i < trials; ++i) {
    Reservoir res = fill(g, m, WeightFunction::triangle(), splitmix64(i + 1));
    EstimateReport r = estimate(res);
    tri[i] = r.n_tri;
    wedge[i] = r.n_wedge;
    sum_tri += r.n_tri;
    sum_wedge += r.n_wedge;
  }
  const double mean_tri = sum_tri / trials;
  const double mean_wedge = sum_wedge / trials;
  for (int i = 0; i < trials; ++i) {
    ss_tri += (tri[i] - mean_tri) * (tri[i] - mean_tri);
    ss_wedge += (wedge[i] - mean_wedge) * (wedge[i] - mean_wedge);
  }
  const double se_tri = std::sqrt(ss_tri / (trials - 1) / trials);
  const double se_wedge = std::sqrt(ss_wedge / (trials - 1) / trials);
  const double z_tri =
      (mean_tri - static_cast<double>(exact.triangles)) / se_tri;
  const double z_wedge =
      (mean_wedge - static_cast<double>(exact.wedges)) / se_wedge;
  INFO("z_tri=", z_tri, " z_wedge=", z_wedge);
  CHECK(std::abs(z_tri) <= 3.0);
  CHECK(std::abs(z_wedge) <= 3.0);
}

TEST_CASE("variance estimator is unbiased for the sampling variance") {
  StreamSource g = permute_stream(erdos_renyi(30, 0.3, 404), 7);
  const int trials = 2000;
  const std::size_t m = 40;
  std::vector<double> tri(trials), v_tri(trials);
  for (int i = 0; i < trials; ++i) {
    Reservoir res =
        fill(g, m, WeightFunction::triangle(), splitmix64(90000 + i));
    EstimateReport r = estimate(res);
    tri[i] = r.n_tri;
    v_tri[i] = r.v_tri;
  }
  double mean_tri = 0.0, mean_v = 0.0;
  for (int i = 0; i < trials; ++i) {
    mean_tri += tri[i];
    mean_v += v_tri[i];
  }
  mean_tri /= trials;
  mean_v /= trials;
  double var_emp = 0.0, ss_v = 0.0;
  for (int i = 0; i < trials; ++i) {
    var_emp += (tri[i] - mean_tri) * (tri[i] - mean_tri);
    ss_v += (v_tri[i] - mean_v) * (v_tri[i] - mean_v);
  }
  var_emp /= trials - 1;
  const double se_v = std::sqrt(ss_v / (trials - 1) / trials);
  const double z = (mean_v - var_emp) / se_v;
  INFO("mean_v=", mean_v, " var_emp=", var_emp, " z=", z);
  CHECK(std::abs(z) <= 3.0);
}

TEST_CASE("covariance estimator tracks the empirical covariance") {
  StreamSource g = permute_stream(erdos_renyi(20, 0.4, 17), 3);
  const int trials = 5000;
  const std::size_t m = 30;
  std::vector<double> tri(trials), wedge(trials), cov(trials);
  for (int i = 0; i < trials; ++i) {
    Reservoir res =
        fill(g, m, WeightFunction::triangle(), splitmix64(50000 + i));
    EstimateReport r = estimate(res);
    tri[i] = r.n_tri;
    wedge[i] = r.n_wedge;
    cov[i] = r.cov_tri_wedge;
  }
  double mt = 0.0, mw = 0.0, mc = 0.0;
  for (int i = 0; i < trials; ++i) {
    mt += tri[i];
    mw += wedge[i];
    mc += cov[i];
  }
  mt /= trials;
  mw /= trials;
  mc /= trials;
  double cov_emp = 0.0, ss_c = 0.0;
  for (int i = 0; i < trials; ++i) {
    cov_emp += (tri[i] - mt) * (wedge[i] - mw);
    ss_c += (cov[i] - mc) * (cov[i] - mc);
  }
  cov_emp /= trials - 1;
  const double se_c = std::sqrt(ss_c / (trials - 1) / trials);
  const double z = (mc - cov_emp) / se_c;
  INFO("mean_cov=", mc, " cov_emp=", cov_emp, " z=", z);
  CHECK(std::abs(z) <= 3.0);
}

TEST_CASE("alpha confidence interval covers the oracle clustering") {
  // The delta-method interval is first-order: measured coverage on
  // G(30,0.3) is ~0.84-0.86 at m=40 (the plug-in variance runs ~20% low at
  // a 30% sample) and reaches ~0.90 at m=60. The floors below are frozen
  // from that coverage experiment.
  StreamSource g = permute_stream(erdos_renyi(30, 0.3, 404), 7);
  ExactCounts exact = exact_counts(g.edges);
  REQUIRE(exact.alpha.has_value());
  const int trials = 1000;
  auto coverage = [&](std::size_t m, std::uint64_t seed_base) {
    int covered = 0;
    for (int i = 0; i < trials; ++i) {
      Reservoir res =
          fill(g, m, WeightFunction::triangle(), splitmix64(seed_base + i));
      EstimateReport r = estimate(res);
      if (!r.ci95_alpha.has_value()) continue;
      if (r.ci95_alpha->lo <= *exact.alpha &&
          *exact.alpha <= r.ci95_alpha->hi) {
        ++covered;
      }
    }
    return covered;
  };
  CHECK(coverage(40, 70000) >= 800);
  CHECK(coverage(60, 71000) >= 880);
}

TEST_CASE("partitioned estimation reduces to the sequential totals") {
  StreamSource g = permute_stream(erdos_renyi(40, 0.35, 88), 11);
  Reservoir res = fill(g, 60, WeightFunction::triangle(), 99);
  EstimateReport seq = estimate(res, 1);
  for (unsigned threads : {2u, 3u, 7u}) {
    EstimateReport par = estimate(res, threads);
    CHECK(par.n_tri == doctest::Approx(seq.n_tri).epsilon(1e-9));
    CHECK(par.n_wedge == doctest::Approx(seq.n_wedge).epsilon(1e-9));
    CHECK(par.v_tri == doctest::Approx(seq.v_tri).epsilon(1e-9));
    CHECK(par.v_wedge == doctest::Approx(seq.v_wedge).epsilon(1e-9));
    CHECK(par.cov_tri_wedge ==
          doctest::Approx(seq.cov_tri_wedge).epsilon(1e-9));
  }
}
