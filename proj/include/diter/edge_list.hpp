#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "diter/graph.hpp"

namespace diter {

class EdgeListError : public std::runtime_error {
 public:
  EdgeListError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  /// 1-based line number of the offending record, 0 when not line specific.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string_view skip_ws(std::string_view s) {
  const auto pos = s.find_first_not_of(" \t\r\f\v");
  return pos == std::string_view::npos ? std::string_view{} : s.substr(pos);
}

template <class Index>
Index parse_node_id(std::string_view& rest, std::size_t line_no) {
  rest = skip_ws(rest);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
  if (ec == std::errc::result_out_of_range)
    throw EdgeListError("node id overflows the index type", line_no);
  if (ec != std::errc{} || (ptr != rest.data() + rest.size() &&
                            std::string_view(" \t\r\f\v").find(*ptr) == std::string_view::npos))
    throw EdgeListError("expected two non-negative integers \"src dst\"", line_no);
  // n = max id + 1 must stay representable as a node count
  if (value >= std::numeric_limits<Index>::max())
    throw EdgeListError("node id overflows the index type", line_no);
  rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
  return static_cast<Index>(value);
}

}  // namespace detail

/**
 * Reads "src dst" lines. Blank lines and lines starting with '#' are
 * skipped. With a node limit, edges touching ids >= limit are dropped and
 * the graph has exactly limit nodes; otherwise n = max id + 1.
 */
template <class Index = std::uint32_t>
BasicGraph<Index> read_edge_list(std::istream& in, std::optional<std::size_t> limit_n = {}) {
  using Edge = typename BasicGraph<Index>::Edge;
  std::vector<Edge> edges;
  std::size_t max_id_plus_one = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = detail::skip_ws(line);
    if (rest.empty() || rest.front() == '#') continue;
    const Index src = detail::parse_node_id<Index>(rest, line_no);
    const Index dst = detail::parse_node_id<Index>(rest, line_no);
    if (!detail::skip_ws(rest).empty())
      throw EdgeListError("trailing data after \"src dst\"", line_no);
    if (limit_n && (src >= *limit_n || dst >= *limit_n)) continue;
    max_id_plus_one = std::max<std::size_t>(max_id_plus_one, std::size_t{std::max(src, dst)} + 1);
    edges.push_back({src, dst});
  }
  if (in.bad()) throw EdgeListError("read failure", 0);
  return BasicGraph<Index>::from_edges(limit_n.value_or(max_id_plus_one), std::move(edges));
}

template <class Index = std::uint32_t>
BasicGraph<Index> load_edge_list(const std::filesystem::path& path,
                                 std::optional<std::size_t> limit_n = {}) {
  std::ifstream in(path);
  if (!in) throw EdgeListError("cannot open " + path.string(), 0);
  return read_edge_list<Index>(in, limit_n);
}

template <class Index>
void write_edge_list(std::ostream& out, const BasicGraph<Index>& g) {
  out << "# nodes " << g.num_nodes() << " edges " << g.num_edges() << '\n';
  for (const auto& e : g.edges()) out << e.src << ' ' << e.dst << '\n';
}

inline void write_degree_profile_csv(std::ostream& out, const std::vector<DegreeRecord>& records) {
  out << "node,in_degree,out_degree\n";
  for (const auto& r : records) out << r.node << ',' << r.in_degree << ',' << r.out_degree << '\n';
}

template <class Edge>
void write_edges_csv(std::ostream& out, const std::vector<Edge>& edges) {
  out << "src,dst\n";
  for (const auto& e : edges) out << e.src << ',' << e.dst << '\n';
}

}  // namespace diter
