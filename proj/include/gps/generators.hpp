#pragma once

#include <cstdint>

#include "gps/stream.hpp"

namespace gps {

// Synthetic streams for tests and benchmarks. Nodes are 1-based; edges are
// emitted in a deterministic natural order (permute_stream randomizes).

StreamSource complete_graph(std::size_t n);
StreamSource star_graph(std::size_t leaves);
StreamSource path_graph(std::size_t n);

// G(n, p): each of the C(n,2) pairs kept independently with probability p.
StreamSource erdos_renyi(std::size_t n, double p, std::uint64_t seed);

// Exactly n_edges distinct canonical edges drawn uniformly from the pairs on
// n_nodes nodes. Requires n_edges <= C(n_nodes, 2).
StreamSource random_edge_stream(std::size_t n_nodes, std::size_t n_edges,
                                std::uint64_t seed);

}  // namespace gps
