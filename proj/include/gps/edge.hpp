#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "gps/random.hpp"

namespace gps {

using node_id = std::uint64_t;

// Canonical undirected edge: u < v, no self loops. arrival is the 1-based
// position of the edge in its stream (0 when detached from a stream).
struct Edge {
  node_id u = 0;
  node_id v = 0;
  std::uint64_t arrival = 0;
};

inline Edge make_edge(node_id a, node_id b, std::uint64_t arrival = 0) {
  if (a == b) throw std::invalid_argument("make_edge: self loop");
  if (a > b) std::swap(a, b);
  return Edge{a, b, arrival};
}

inline bool same_endpoints(const Edge& x, const Edge& y) {
  return x.u == y.u && x.v == y.v;
}

// Hash key over the canonical endpoint pair.
struct NodePair {
  node_id a = 0;
  node_id b = 0;

  friend bool operator==(const NodePair&, const NodePair&) = default;
};

inline NodePair pair_key(node_id a, node_id b) {
  if (a > b) std::swap(a, b);
  return NodePair{a, b};
}

inline NodePair pair_key(const Edge& e) { return NodePair{e.u, e.v}; }

struct NodePairHash {
  std::size_t operator()(const NodePair& p) const {
    std::uint64_t h = splitmix64(p.a);
    h = splitmix64(h ^ (p.b + 0x9e3779b97f4a7c15ULL));
    return static_cast<std::size_t>(h);
  }
};

}  // namespace gps
