#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gps/edge.hpp"
#include "gps/stream.hpp"

namespace gps {

// Exact ground truth for verification-scale graphs.
struct ExactCounts {
  std::uint64_t triangles = 0;
  std::uint64_t wedges = 0;
  // 3 * triangles / wedges; absent when the graph has no wedge.
  std::optional<double> alpha;
};

// Brute-force counts by per-edge neighbor-set intersection (triangles) and
// sum of C(deg, 2) over nodes (wedges).
ExactCounts exact_counts(std::span<const Edge> edges);

// Running exact counts after each arrival, computed incrementally.
std::vector<ExactCounts> prefix_counts(const StreamSource& stream);

}  // namespace gps
