#include "gps/oracle.hpp"

#include <unordered_map>
#include <unordered_set>

namespace gps {

namespace {

using Adjacency = std::unordered_map<node_id, std::unordered_set<node_id>>;

std::uint64_t common_neighbors(const Adjacency& adj, node_id a, node_id b) {
  auto ia = adj.find(a);
  auto ib = adj.find(b);
  if (ia == adj.end() || ib == adj.end()) return 0;
  const auto* small = &ia->second;
  const auto* large = &ib->second;
  if (small->size() > large->size()) std::swap(small, large);
  std::uint64_t n = 0;
  for (node_id x : *small) {
    if (large->count(x)) ++n;
  }
  return n;
}

std::optional<double> clustering(std::uint64_t triangles,
                                 std::uint64_t wedges) {
  if (wedges == 0) return std::nullopt;
  return 3.0 * static_cast<double>(triangles) / static_cast<double>(wedges);
}

}  // namespace

ExactCounts exact_counts(std::span<const Edge> edges) {
  Adjacency adj;
  for (const Edge& e : edges) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::uint64_t tri3 = 0;  // each triangle counted once per edge
  for (const Edge& e : edges) {
    tri3 += common_neighbors(adj, e.u, e.v);
  }
  std::uint64_t wedges = 0;
  for (const auto& [node, nbrs] : adj) {
    std::uint64_t d = nbrs.size();
    wedges += d * (d - 1) / 2;
  }
  ExactCounts c;
  c.triangles = tri3 / 3;
  c.wedges = wedges;
  c.alpha = clustering(c.triangles, c.wedges);
  return c;
}

std::vector<ExactCounts> prefix_counts(const StreamSource& stream) {
  std::vector<ExactCounts> out;
  out.reserve(stream.edges.size());
  Adjacency adj;
  std::uint64_t triangles = 0;
  std::uint64_t wedges = 0;
  for (const Edge& e : stream.edges) {
    triangles += common_neighbors(adj, e.u, e.v);
    wedges += adj.count(e.u) ? adj[e.u].size() : 0;
    wedges += adj.count(e.v) ? adj[e.v].size() : 0;
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
    ExactCounts c;
    c.triangles = triangles;
    c.wedges = wedges;
    c.alpha = clustering(triangles, wedges);
    out.push_back(c);
  }
  return out;
}

}  // namespace gps
