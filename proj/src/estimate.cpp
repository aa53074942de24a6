#include "gps/estimate.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace gps {

ConfidenceInterval ci95(double x, double var) {
  double half = kNormal95 * std::sqrt(std::max(0.0, var));
  return ConfidenceInterval{std::max(0.0, x - half), x + half};
}

std::optional<ClusteringVariance> clustering_variance(double n_tri,
                                                      double n_wedge,
                                                      double v_tri,
                                                      double v_wedge,
                                                      double cov_tri_wedge) {
  if (n_wedge <= 0.0) return std::nullopt;
  const double w2 = n_wedge * n_wedge;
  double ratio_var = v_tri / w2 + n_tri * n_tri * v_wedge / (w2 * w2) -
                     2.0 * n_tri * cov_tri_wedge / (w2 * n_wedge);
  double value = 9.0 * ratio_var;
  if (value < 0.0) return ClusteringVariance{0.0, true};
  return ClusteringVariance{value, false};
}

EstimateReport make_report(double n_tri, double n_wedge, double v_tri,
                           double v_wedge, double cov_tri_wedge) {
  EstimateReport r;
  r.n_tri = n_tri;
  r.n_wedge = n_wedge;
  r.v_tri = v_tri;
  r.v_wedge = v_wedge;
  r.cov_tri_wedge = cov_tri_wedge;
  r.ci95_tri = ci95(n_tri, v_tri);
  r.ci95_wedge = ci95(n_wedge, v_wedge);
  if (n_wedge > 0.0) {
    r.alpha = 3.0 * n_tri / n_wedge;
    auto va = clustering_variance(n_tri, n_wedge, v_tri, v_wedge,
                                  cov_tri_wedge);
    r.v_alpha = va->value;
    r.v_alpha_clamped = va->clamped;
    r.ci95_alpha = ci95(*r.alpha, *r.v_alpha);
  }
  return r;
}

namespace {

// Kahan compensated accumulator; keeps the partitioned reduction within
// 1e-9 of the sequential pass.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

struct PostAccum {
  KahanSum n_tri;        // sum of per-edge triangle estimates (x3)
  KahanSum n_wedge;      // sum of per-edge wedge estimates (x2)
  KahanSum v_tri_diag;   // per-subgraph variance terms (x3)
  KahanSum v_wedge_diag; // (x2)
  KahanSum c_tri;        // localized triangle covariance terms
  KahanSum c_wedge;      // localized wedge covariance terms
  KahanSum cov_tw;       // triangle-wedge covariance
};

// Per-edge pass of the localized estimator. Every triangle and wedge incident
// to edge k contributes here; triangles are counted once per member edge and
// wedges once per member edge (the caller divides by 3 resp. 2).
void accumulate_edge(const Reservoir& state, const SampledEdge& entry,
                     PostAccum& acc) {
  const Edge& k = entry.edge;
  const double zstar = state.zstar();
  const double q = inclusion_prob_from(entry.w, zstar);
  const double inv_q = 1.0 / q;

  node_id v1 = k.u;
  node_id v2 = k.v;
  if (state.sampled_degree(v1) > state.sampled_degree(v2)) std::swap(v1, v2);
  const auto* nbr1 = state.neighbors(v1);
  const auto* nbr2 = state.neighbors(v2);

  double n_tri_k = 0.0, v_tri_k = 0.0, c_tri_k = 0.0;
  double n_wedge_k = 0.0, v_wedge_k = 0.0, c_wedge_k = 0.0;
  double run_tri = 0.0;    // running sum of (q1*q2)^-1 over triangles at k
  double run_wedge = 0.0;  // running sum of q^-1 over wedges at k, both loops
  double tri_sub = 0.0;    // sum of P_i * (1/q1_i + 1/q2_i)
  double tri_pp = 0.0;     // sum of P_i * (P_i - 1)

  if (nbr1 != nullptr) {
    for (node_id v3 : *nbr1) {
      if (v3 == v2) continue;
      const SampledEdge* k1 = state.find(v1, v3);
      const double q1 = inclusion_prob_from(k1->w, zstar);
      const double inv_q1 = 1.0 / q1;
      if (nbr2 != nullptr && nbr2->count(v3)) {
        const SampledEdge* k2 = state.find(v2, v3);
        const double q2 = inclusion_prob_from(k2->w, zstar);
        const double p = inv_q1 / q2;  // (q1*q2)^-1
        const double s_tri = inv_q * p;
        n_tri_k += s_tri;
        v_tri_k += s_tri * (s_tri - 1.0);
        c_tri_k += run_tri * p;
        run_tri += p;
        tri_sub += p * (inv_q1 + 1.0 / q2);
        tri_pp += p * (p - 1.0);
      }
      const double s_wedge = inv_q * inv_q1;
      n_wedge_k += s_wedge;
      v_wedge_k += s_wedge * (s_wedge - 1.0);
      c_wedge_k += run_wedge * inv_q1;
      run_wedge += inv_q1;
    }
  }
  if (nbr2 != nullptr) {
    for (node_id v3 : *nbr2) {
      if (v3 == v1) continue;
      const SampledEdge* k2 = state.find(v2, v3);
      const double inv_q2 = 1.0 / inclusion_prob_from(k2->w, zstar);
      const double s_wedge = inv_q * inv_q2;
      n_wedge_k += s_wedge;
      v_wedge_k += s_wedge * (s_wedge - 1.0);
      c_wedge_k += run_wedge * inv_q2;
      run_wedge += inv_q2;
    }
  }

  const double pair_scale = 2.0 * inv_q * (inv_q - 1.0);
  c_tri_k *= pair_scale;
  c_wedge_k *= pair_scale;

  // Triangle-wedge covariance, attributed at k: pairs sharing exactly k
  // (every triangle at k against every wedge at k except the triangle's own
  // two sub-wedges through k), plus pairs where the wedge is two edges of
  // the triangle (attributed at the third edge).
  const double sum_wedges = run_wedge;
  const double cov_tw_k =
      inv_q * (inv_q - 1.0) * (run_tri * sum_wedges - tri_sub) +
      inv_q * tri_pp;

  acc.n_tri.add(n_tri_k);
  acc.n_wedge.add(n_wedge_k);
  acc.v_tri_diag.add(v_tri_k);
  acc.v_wedge_diag.add(v_wedge_k);
  acc.c_tri.add(c_tri_k);
  acc.c_wedge.add(c_wedge_k);
  acc.cov_tw.add(cov_tw_k);
}

PostAccum accumulate_all(const Reservoir& state, unsigned threads) {
  const auto& entries = state.entries();
  if (threads <= 1 || entries.size() < 2 * threads) {
    PostAccum acc;
    for (const SampledEdge& e : entries) accumulate_edge(state, e, acc);
    return acc;
  }
  // Contiguous partitions, reduced in partition order: deterministic for a
  // fixed thread count.
  std::vector<PostAccum> parts(threads);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  const std::size_t chunk = (entries.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(entries.size(), begin + chunk);
      for (std::size_t i = begin; i < end; ++i) {
        accumulate_edge(state, entries[i], parts[t]);
      }
    });
  }
  for (auto& w : workers) w.join();
  PostAccum acc;
  for (const PostAccum& p : parts) {
    acc.n_tri.add(p.n_tri.sum);
    acc.n_wedge.add(p.n_wedge.sum);
    acc.v_tri_diag.add(p.v_tri_diag.sum);
    acc.v_wedge_diag.add(p.v_wedge_diag.sum);
    acc.c_tri.add(p.c_tri.sum);
    acc.c_wedge.add(p.c_wedge.sum);
    acc.cov_tw.add(p.cov_tw.sum);
  }
  return acc;
}

void require_post_mode(const Reservoir& state) {
  if (state.mode() != Mode::post) {
    throw std::invalid_argument(
        "post-stream estimation requires a post-mode reservoir");
  }
}

}  // namespace

EstimateReport estimate(const Reservoir& state, unsigned threads) {
  require_post_mode(state);
  PostAccum acc = accumulate_all(state, threads);
  const double n_tri = acc.n_tri.sum / 3.0;
  const double n_wedge = acc.n_wedge.sum / 2.0;
  const double v_tri = acc.v_tri_diag.sum / 3.0 + acc.c_tri.sum;
  const double v_wedge = acc.v_wedge_diag.sum / 2.0 + acc.c_wedge.sum;
  return make_report(n_tri, n_wedge, v_tri, v_wedge, acc.cov_tw.sum);
}

double tri_wedge_covariance(const Reservoir& state) {
  require_post_mode(state);
  PostAccum acc = accumulate_all(state, 1);
  return acc.cov_tw.sum;
}

}  // namespace gps
