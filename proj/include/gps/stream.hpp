#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gps/edge.hpp"

namespace gps {

struct ParseOptions {
  char comment_prefix = '#';
  // Default: drop repeated canonical edges and report how many. When false a
  // duplicate is a hard parse error.
  bool drop_duplicates = true;
};

// An immutable, simplified undirected edge stream. Arrival indices are
// 1..edges.size() in order.
struct StreamSource {
  std::vector<Edge> edges;
  std::string origin;
  std::optional<std::uint64_t> permutation_seed;
  std::uint64_t duplicates_dropped = 0;
  std::uint64_t self_loops_dropped = 0;

  std::size_t size() const { return edges.size(); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Splits a line on whitespace/commas. Shared with the CLI's relabeling pass.
std::vector<std::string_view> split_tokens(std::string_view line);

// Parses "u v" pairs, one edge per line; tokens may be separated by
// whitespace or commas, lines starting with the comment prefix are skipped,
// tokens after the first two are ignored. Self loops are dropped (counted).
// Throws ParseError on malformed lines or an empty result.
StreamSource parse_edge_list(std::istream& in, const ParseOptions& options = {},
                             std::string origin = "<stream>");
StreamSource parse_edge_list_text(std::string_view text,
                                  const ParseOptions& options = {},
                                  std::string origin = "<text>");
StreamSource parse_edge_list_file(const std::string& path,
                                  const ParseOptions& options = {});

// One "u v" line per edge, in arrival order. Reparsing the output yields the
// same edge sequence.
void write_edge_list(const StreamSource& s, std::ostream& out);

// Uniformly random arrival order (Fisher-Yates under the seeded generator);
// deterministic for a fixed seed. Arrival indices are reassigned 1..|K|.
StreamSource permute_stream(const StreamSource& s, std::uint64_t seed);

// Rebuilds a stream from bare edges, assigning arrivals 1..n.
StreamSource stream_from_edges(std::vector<Edge> edges, std::string origin);

}  // namespace gps
