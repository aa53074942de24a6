#include "gps/instream.hpp"

#include <stdexcept>
#include <vector>

namespace gps {

void instream_estimate(Reservoir& state, InstreamCounters& counters,
                       const Edge& k) {
  const double zstar = state.zstar();
  const auto* nbr_u = state.neighbors(k.u);
  const auto* nbr_v = state.neighbors(k.v);

  // Triangles completed by k: scan the smaller sampled neighborhood.
  if (nbr_u != nullptr && nbr_v != nullptr) {
    const auto* small = nbr_u;
    const auto* large = nbr_v;
    node_id small_end = k.u;
    node_id large_end = k.v;
    if (small->size() > large->size()) {
      std::swap(small, large);
      std::swap(small_end, large_end);
    }
    for (node_id v3 : *small) {
      if (v3 == large_end || !large->count(v3)) continue;
      SampledEdge* k1 = state.find_mut(small_end, v3);
      SampledEdge* k2 = state.find_mut(large_end, v3);
      const double q1 = inclusion_prob_from(k1->w, zstar);
      const double q2 = inclusion_prob_from(k2->w, zstar);
      const double p = 1.0 / (q1 * q2);
      counters.n_tri += p;
      counters.v_tri += (p - 1.0) * p;
      counters.v_tri += 2.0 * (k1->ctri + k2->ctri) * p;
      counters.cov_tri_wedge += (k1->cwedge + k2->cwedge) * p;
      k1->ctri += (1.0 / q1 - 1.0) / q2;
      k2->ctri += (1.0 / q2 - 1.0) / q1;
    }
  }

  // Every resident edge adjacent to k closes a wedge whose final edge is k.
  auto wedge_leg = [&](node_id shared, node_id skip) {
    const auto* nbrs = state.neighbors(shared);
    if (nbrs == nullptr) return;
    for (node_id v3 : *nbrs) {
      if (v3 == skip) continue;
      SampledEdge* j = state.find_mut(shared, v3);
      const double q = inclusion_prob_from(j->w, zstar);
      const double inv_q = 1.0 / q;
      counters.n_wedge += inv_q;
      counters.v_wedge += inv_q * (inv_q - 1.0);
      counters.v_wedge += 2.0 * j->cwedge * inv_q;
      counters.cov_tri_wedge += j->ctri * inv_q;
      j->cwedge += inv_q - 1.0;
    }
  };
  wedge_leg(k.u, k.v);
  wedge_leg(k.v, k.u);
}

UpdateOutcome process_edge(Reservoir& state, InstreamCounters& counters,
                           const Edge& k, const WeightFunction& wf, Rng& rng) {
  if (state.mode() != Mode::instream) {
    throw std::invalid_argument(
        "process_edge requires an instream-mode reservoir");
  }
  if (state.contains(k.u, k.v)) {
    throw std::invalid_argument("process_edge: duplicate resident edge");
  }
  instream_estimate(state, counters, k);
  return state.update(k, wf, rng);
}

EstimateReport instream_report(const InstreamCounters& counters) {
  return make_report(counters.n_tri, counters.n_wedge, counters.v_tri,
                     counters.v_wedge, counters.cov_tri_wedge);
}

}  // namespace gps
