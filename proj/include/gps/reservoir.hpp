#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gps/edge.hpp"
#include "gps/random.hpp"

namespace gps {

class Reservoir;

enum class Mode { post, instream };

enum class WeightKind { uniform, triangle };

// Sampling weight of an arriving edge as a function of the current reservoir
// topology. uniform: W = 1 (classical reservoir sampling). triangle:
// W = multiplier * (#reservoir triangles completed by the edge) + base.
struct WeightFunction {
  WeightKind kind = WeightKind::triangle;
  double multiplier = 9.0;
  double base = 1.0;

  static WeightFunction uniform() { return {WeightKind::uniform, 0.0, 1.0}; }
  static WeightFunction triangle(double multiplier = 9.0, double base = 1.0);

  const char* name() const {
    return kind == WeightKind::uniform ? "uniform" : "triangle";
  }
};

// Resident edge state. w, u and r are fixed at arrival; only the in-stream
// covariance accumulators ctri/cwedge mutate afterwards.
struct SampledEdge {
  Edge edge;
  double w = 0.0;  // sampling weight, > 0
  double u = 0.0;  // uniform draw in (0,1]
  double r = 0.0;  // priority w/u
  double ctri = 0.0;
  double cwedge = 0.0;
};

struct UpdateOutcome {
  bool inserted = false;
  std::optional<Edge> evicted;
  double new_zstar = 0.0;
};

// min{1, w/zstar}; zstar == 0 means no eviction has happened and every
// resident edge is held with certainty.
inline double inclusion_prob_from(double w, double zstar) {
  if (zstar <= 0.0) return 1.0;
  return w < zstar ? w / zstar : 1.0;
}

// Fixed-capacity priority reservoir over a graph stream. Keeps the m
// highest-priority edges seen so far (priority w/u), the threshold zstar,
// and an adjacency index over resident edges. Single writer; reads may
// interleave between updates.
class Reservoir {
 public:
  using NeighborSet = std::unordered_set<node_id>;

  explicit Reservoir(std::size_t capacity, Mode mode = Mode::post);

  // Processes one arrival: draws u, computes the weight against the
  // pre-insertion reservoir, provisionally admits the edge and evicts the
  // minimum-priority edge if over capacity. Ties on priority evict the
  // newer edge first. Throws if the edge is already resident.
  UpdateOutcome update(const Edge& k, const WeightFunction& wf, Rng& rng);

  // |sampled neighbors of a  ∩  sampled neighbors of b|, by scanning the
  // smaller neighborhood and probing the other.
  std::size_t shared_neighbors(node_id a, node_id b) const;

  // HT inclusion probability of a resident edge; throws if non-resident.
  double inclusion_prob(const Edge& e) const;

  bool contains(node_id a, node_id b) const {
    return slot_.count(pair_key(a, b)) > 0;
  }
  const SampledEdge* find(node_id a, node_id b) const;
  // Mutable lookup for in-stream accumulator updates; w/u/r stay fixed.
  SampledEdge* find_mut(node_id a, node_id b);

  // Resident edges in heap order (unspecified but stable between updates).
  const std::vector<SampledEdge>& entries() const { return heap_; }

  const NeighborSet* neighbors(node_id v) const;
  std::size_t sampled_degree(node_id v) const;

  double zstar() const { return zstar_; }
  std::size_t size() const { return heap_.size(); }
  std::size_t capacity() const { return capacity_; }
  Mode mode() const { return mode_; }
  std::uint64_t arrivals() const { return arrivals_; }

  // Verifies heap order, slot-map bijection, adjacency degree sums and the
  // threshold invariants. Throws std::logic_error on violation. Test support.
  void validate() const;

 private:
  // Eviction order: lowest priority first, ties evict the newer arrival.
  static bool evicts_before(const SampledEdge& x, const SampledEdge& y) {
    if (x.r != y.r) return x.r < y.r;
    return x.edge.arrival > y.edge.arrival;
  }

  void sift_up(std::size_t i);
  void sift_down(std::size_t i);
  void place(std::size_t i, SampledEdge&& e);
  void adjacency_add(const Edge& e);
  void adjacency_remove(const Edge& e);

  std::size_t capacity_;
  Mode mode_;
  double zstar_ = 0.0;
  std::uint64_t arrivals_ = 0;
  std::vector<SampledEdge> heap_;
  std::unordered_map<NodePair, std::size_t, NodePairHash> slot_;
  std::unordered_map<node_id, NeighborSet> adj_;
};

// Weight of edge k against the current reservoir; strictly positive.
double compute_weight(const WeightFunction& wf, const Edge& k,
                      const Reservoir& state);

}  // namespace gps
