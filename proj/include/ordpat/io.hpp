#pragma once

// Plain edge-list format: a header line "n m", then m lines "u v" with
// 1 <= u < v <= n. Lines starting with '#' and blank lines are ignored.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ordpat/ordered_graph.hpp"

namespace ordpat {

namespace detail {

inline bool skip_line(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

[[noreturn]] inline void parse_fail(std::size_t line_no, const std::string& what) {
  throw invalid_input("line " + std::to_string(line_no) + ": " + what);
}

inline bool read_pair(const std::string& line, long long& a, long long& b) {
  std::istringstream ss(line);
  std::string rest;
  if (!(ss >> a >> b)) return false;
  if (ss >> rest && rest[0] != '#') return false;
  return true;
}

}  // namespace detail

inline OrderedGraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  long long n = -1, m = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skip_line(line)) continue;
    if (!detail::read_pair(line, n, m) || n < 0 || m < 0)
      detail::parse_fail(line_no, "expected header \"n m\"");
    break;
  }
  if (n < 0) throw invalid_input("empty input: missing \"n m\" header");
  if (n > (1LL << 30)) detail::parse_fail(line_no, "vertex count too large");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skip_line(line)) continue;
    long long u, v;
    if (!detail::read_pair(line, u, v)) detail::parse_fail(line_no, "expected edge \"u v\"");
    if (u < 1 || v < 1 || u > n || v > n)
      detail::parse_fail(line_no, "endpoint out of range [1," + std::to_string(n) + "]");
    if (u == v) detail::parse_fail(line_no, "self-loop");
    if (u > v) detail::parse_fail(line_no, "edge must be written with u < v");
    if (static_cast<long long>(edges.size()) == m)
      detail::parse_fail(line_no, "more edges than the header announces");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (static_cast<long long>(edges.size()) != m)
    throw invalid_input("header announces " + std::to_string(m) + " edges, found " +
                        std::to_string(edges.size()));
  return OrderedGraph(static_cast<Vertex>(n), std::move(edges));
}

inline TracedGraph read_traced(std::istream& in) { return TracedGraph(read_edge_list(in)); }

inline void write_edge_list(std::ostream& out, const OrderedGraph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline void write_edge_list(std::ostream& out, const TracedGraph& g) {
  write_edge_list(out, g.graph());
}

}  // namespace ordpat
