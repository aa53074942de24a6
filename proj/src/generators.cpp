#include "gps/generators.hpp"

#include <stdexcept>
#include <string>
#include <unordered_set>

#include "gps/random.hpp"

namespace gps {

StreamSource complete_graph(std::size_t n) {
  if (n < 2) throw std::invalid_argument("complete_graph: n >= 2");
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (node_id u = 1; u <= n; ++u) {
    for (node_id v = u + 1; v <= n; ++v) edges.push_back(Edge{u, v, 0});
  }
  return stream_from_edges(std::move(edges), "k" + std::to_string(n));
}

StreamSource star_graph(std::size_t leaves) {
  if (leaves < 1) throw std::invalid_argument("star_graph: leaves >= 1");
  std::vector<Edge> edges;
  edges.reserve(leaves);
  for (node_id v = 2; v <= leaves + 1; ++v) edges.push_back(Edge{1, v, 0});
  return stream_from_edges(std::move(edges), "s" + std::to_string(leaves));
}

StreamSource path_graph(std::size_t n) {
  if (n < 2) throw std::invalid_argument("path_graph: n >= 2");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (node_id u = 1; u < n; ++u) edges.push_back(Edge{u, u + 1, 0});
  return stream_from_edges(std::move(edges), "p" + std::to_string(n));
}

StreamSource erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (n < 2 || p < 0.0 || p > 1.0) {
    throw std::invalid_argument("erdos_renyi: need n >= 2 and p in [0,1]");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  for (node_id u = 1; u <= n; ++u) {
    for (node_id v = u + 1; v <= n; ++v) {
      if (rng.uniform01() < p) edges.push_back(Edge{u, v, 0});
    }
  }
  if (edges.empty()) throw std::invalid_argument("erdos_renyi: empty graph");
  return stream_from_edges(std::move(edges),
                           "er_n" + std::to_string(n) + "_seed" +
                               std::to_string(seed));
}

StreamSource random_edge_stream(std::size_t n_nodes, std::size_t n_edges,
                                std::uint64_t seed) {
  const std::size_t max_edges = n_nodes * (n_nodes - 1) / 2;
  if (n_nodes < 2 || n_edges == 0 || n_edges > max_edges) {
    throw std::invalid_argument("random_edge_stream: bad node/edge counts");
  }
  Rng rng(seed);
  std::unordered_set<NodePair, NodePairHash> seen;
  seen.reserve(n_edges * 2);
  std::vector<Edge> edges;
  edges.reserve(n_edges);
  while (edges.size() < n_edges) {
    node_id a = rng.below(n_nodes) + 1;
    node_id b = rng.below(n_nodes) + 1;
    if (a == b) continue;
    NodePair key = pair_key(a, b);
    if (!seen.insert(key).second) continue;
    edges.push_back(Edge{key.a, key.b, 0});
  }
  return stream_from_edges(std::move(edges),
                           "rand_n" + std::to_string(n_nodes) + "_m" +
                               std::to_string(n_edges));
}

}  // namespace gps
