#include "gps/reservoir.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gps {

WeightFunction WeightFunction::triangle(double multiplier, double base) {
  if (!(multiplier >= 0.0) || !(base > 0.0)) {
    throw std::invalid_argument(
        "triangle weight: multiplier must be >= 0 and base > 0");
  }
  return {WeightKind::triangle, multiplier, base};
}

double compute_weight(const WeightFunction& wf, const Edge& k,
                      const Reservoir& state) {
  if (wf.kind == WeightKind::uniform) return 1.0;
  double shared = static_cast<double>(state.shared_neighbors(k.u, k.v));
  return wf.multiplier * shared + wf.base;
}

Reservoir::Reservoir(std::size_t capacity, Mode mode)
    : capacity_(capacity), mode_(mode) {
  if (capacity == 0) {
    throw std::invalid_argument("reservoir capacity must be >= 1");
  }
  heap_.reserve(capacity);
  slot_.reserve(capacity * 2);
}

std::size_t Reservoir::shared_neighbors(node_id a, node_id b) const {
  auto ia = adj_.find(a);
  auto ib = adj_.find(b);
  if (ia == adj_.end() || ib == adj_.end()) return 0;
  const NeighborSet* small = &ia->second;
  const NeighborSet* large = &ib->second;
  if (small->size() > large->size()) std::swap(small, large);
  std::size_t n = 0;
  for (node_id x : *small) {
    if (large->count(x)) ++n;
  }
  return n;
}

double Reservoir::inclusion_prob(const Edge& e) const {
  auto it = slot_.find(pair_key(e));
  if (it == slot_.end()) {
    throw std::invalid_argument("inclusion_prob: edge " + std::to_string(e.u) +
                                "-" + std::to_string(e.v) + " not resident");
  }
  return inclusion_prob_from(heap_[it->second].w, zstar_);
}

const SampledEdge* Reservoir::find(node_id a, node_id b) const {
  auto it = slot_.find(pair_key(a, b));
  return it == slot_.end() ? nullptr : &heap_[it->second];
}

SampledEdge* Reservoir::find_mut(node_id a, node_id b) {
  auto it = slot_.find(pair_key(a, b));
  return it == slot_.end() ? nullptr : &heap_[it->second];
}

const Reservoir::NeighborSet* Reservoir::neighbors(node_id v) const {
  auto it = adj_.find(v);
  return it == adj_.end() ? nullptr : &it->second;
}

std::size_t Reservoir::sampled_degree(node_id v) const {
  auto it = adj_.find(v);
  return it == adj_.end() ? 0 : it->second.size();
}

void Reservoir::place(std::size_t i, SampledEdge&& e) {
  slot_[pair_key(e.edge)] = i;
  heap_[i] = std::move(e);
}

void Reservoir::sift_up(std::size_t i) {
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!evicts_before(heap_[i], heap_[parent])) break;
    SampledEdge tmp = std::move(heap_[i]);
    place(i, std::move(heap_[parent]));
    place(parent, std::move(tmp));
    i = parent;
  }
}

void Reservoir::sift_down(std::size_t i) {
  const std::size_t n = heap_.size();
  for (;;) {
    std::size_t left = 2 * i + 1;
    if (left >= n) break;
    std::size_t child = left;
    std::size_t right = left + 1;
    if (right < n && evicts_before(heap_[right], heap_[left])) child = right;
    if (!evicts_before(heap_[child], heap_[i])) break;
    SampledEdge tmp = std::move(heap_[i]);
    place(i, std::move(heap_[child]));
    place(child, std::move(tmp));
    i = child;
  }
}

void Reservoir::adjacency_add(const Edge& e) {
  adj_[e.u].insert(e.v);
  adj_[e.v].insert(e.u);
}

void Reservoir::adjacency_remove(const Edge& e) {
  auto iu = adj_.find(e.u);
  if (iu != adj_.end()) {
    iu->second.erase(e.v);
    if (iu->second.empty()) adj_.erase(iu);
  }
  auto iv = adj_.find(e.v);
  if (iv != adj_.end()) {
    iv->second.erase(e.u);
    if (iv->second.empty()) adj_.erase(iv);
  }
}

UpdateOutcome Reservoir::update(const Edge& k, const WeightFunction& wf,
                                Rng& rng) {
  if (k.u >= k.v) {
    throw std::invalid_argument("update: edge must be canonical (u < v)");
  }
  if (contains(k.u, k.v)) {
    throw std::invalid_argument("update: duplicate resident edge " +
                                std::to_string(k.u) + "-" +
                                std::to_string(k.v));
  }
  ++arrivals_;

  SampledEdge cand;
  cand.edge = k;
  cand.u = rng.uniform_open_closed();
  cand.w = compute_weight(wf, k, *this);  // weight against pre-insertion state
  cand.r = cand.w / cand.u;

  UpdateOutcome out;
  if (heap_.size() < capacity_) {
    heap_.push_back(SampledEdge{});
    place(heap_.size() - 1, std::move(cand));
    sift_up(heap_.size() - 1);
    adjacency_add(k);
    out.inserted = true;
    out.new_zstar = zstar_;
    return out;
  }

  // Reservoir full: the provisional set is residents + candidate and the
  // minimum-priority member of it leaves.
  if (evicts_before(cand, heap_[0])) {
    zstar_ = std::max(zstar_, cand.r);
    out.inserted = false;
    out.new_zstar = zstar_;
    return out;
  }
  SampledEdge evicted = std::move(heap_[0]);
  zstar_ = std::max(zstar_, evicted.r);
  slot_.erase(pair_key(evicted.edge));
  adjacency_remove(evicted.edge);
  adjacency_add(k);
  place(0, std::move(cand));
  sift_down(0);
  out.inserted = true;
  out.evicted = evicted.edge;
  out.new_zstar = zstar_;
  return out;
}

void Reservoir::validate() const {
  auto fail = [](const std::string& what) {
    throw std::logic_error("reservoir invariant violated: " + what);
  };
  if (heap_.size() > capacity_) fail("size exceeds capacity");
  if (slot_.size() != heap_.size()) fail("slot map size mismatch");
  for (std::size_t i = 0; i < heap_.size(); ++i) {
    const SampledEdge& e = heap_[i];
    if (!(e.w > 0.0)) fail("non-positive weight");
    if (!(e.u > 0.0 && e.u <= 1.0)) fail("draw outside (0,1]");
    if (e.r != e.w / e.u) fail("priority != w/u");
    if (zstar_ > 0.0 && !(e.r > zstar_)) fail("resident priority <= zstar");
    auto it = slot_.find(pair_key(e.edge));
    if (it == slot_.end() || it->second != i) fail("slot map entry wrong");
    if (i > 0) {
      const SampledEdge& parent = heap_[(i - 1) / 2];
      if (evicts_before(e, parent)) fail("heap order");
    }
  }
  std::size_t degree_sum = 0;
  for (const auto& [node, nbrs] : adj_) {
    if (nbrs.empty()) fail("empty adjacency set retained");
    degree_sum += nbrs.size();
    for (node_id x : nbrs) {
      if (!contains(node, x)) fail("adjacency lists non-resident edge");
    }
  }
  if (degree_sum != 2 * heap_.size()) fail("degree sum != 2 * size");
  if (zstar_ < 0.0) fail("negative zstar");
}

}  // namespace gps
