#include "gps/stream.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>
#include <utility>

namespace gps {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  const auto is_sep = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == ',' || c == ';';
  };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_sep(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

namespace {

node_id parse_node(std::string_view tok, std::size_t line_no) {
  node_id value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("line " + std::to_string(line_no) +
                         ": expected unsigned integer node id, got '" +
                         std::string(tok) + "'",
                     line_no);
  }
  return value;
}

}  // namespace

StreamSource parse_edge_list(std::istream& in, const ParseOptions& options,
                             std::string origin) {
  StreamSource s;
  s.origin = std::move(origin);
  std::unordered_set<NodePair, NodePairHash> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (!view.empty() && view.front() == options.comment_prefix) continue;
    auto tokens = split_tokens(view);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) {
      throw ParseError(
          "line " + std::to_string(line_no) + ": expected two node ids",
          line_no);
    }
    node_id a = parse_node(tokens[0], line_no);
    node_id b = parse_node(tokens[1], line_no);
    if (a == b) {
      ++s.self_loops_dropped;
      continue;
    }
    NodePair key = pair_key(a, b);
    if (!seen.insert(key).second) {
      if (!options.drop_duplicates) {
        throw ParseError("line " + std::to_string(line_no) +
                             ": duplicate edge " + std::to_string(key.a) +
                             " " + std::to_string(key.b),
                         line_no);
      }
      ++s.duplicates_dropped;
      continue;
    }
    s.edges.push_back(
        Edge{key.a, key.b, static_cast<std::uint64_t>(s.edges.size() + 1)});
  }
  if (s.edges.empty()) {
    throw ParseError("empty stream: no edges after simplification", line_no);
  }
  return s;
}

StreamSource parse_edge_list_text(std::string_view text,
                                  const ParseOptions& options,
                                  std::string origin) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, options, std::move(origin));
}

StreamSource parse_edge_list_file(const std::string& path,
                                  const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  return parse_edge_list(in, options, path);
}

void write_edge_list(const StreamSource& s, std::ostream& out) {
  for (const Edge& e : s.edges) out << e.u << ' ' << e.v << '\n';
}

StreamSource permute_stream(const StreamSource& s, std::uint64_t seed) {
  if (s.edges.empty()) {
    throw std::invalid_argument("permute_stream: empty stream");
  }
  StreamSource out = s;
  Rng rng(seed);
  for (std::size_t i = out.edges.size() - 1; i > 0; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(out.edges[i], out.edges[j]);
  }
  for (std::size_t i = 0; i < out.edges.size(); ++i) {
    out.edges[i].arrival = i + 1;
  }
  out.permutation_seed = seed;
  return out;
}

StreamSource stream_from_edges(std::vector<Edge> edges, std::string origin) {
  StreamSource s;
  s.edges = std::move(edges);
  s.origin = std::move(origin);
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    s.edges[i].arrival = i + 1;
  }
  return s;
}

}  // namespace gps
